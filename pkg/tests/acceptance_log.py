"""Collects one verdict line per acceptance criterion for the terminal summary."""

RESULTS: dict[int, str] = {}


def record(number: int, title: str, passed: bool, detail: str) -> str:
    line = f"ACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} | {title} | {detail}"
    RESULTS[number] = line
    print(line)
    return line
