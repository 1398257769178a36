"""Collects one verdict per acceptance criterion for the terminal summary."""

RESULTS: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    RESULTS[criterion] = (bool(ok), detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {criterion} failed: {detail}"
