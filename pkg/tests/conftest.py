import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA: dict = {}


def record(number: int, ok: bool, detail: str, elapsed: float) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  ({elapsed:.1f} s)  {detail}"
    CRITERIA[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for n in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[n])
