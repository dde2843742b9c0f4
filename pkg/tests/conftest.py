import sys
from functools import lru_cache
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

CALIBRATION = HERE / "calibration.txt"

# criterion name -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


@lru_cache(maxsize=None)
def constants():
    from wsheap.instrument import read_constants

    with open(CALIBRATION, encoding="utf-8") as fh:
        return read_constants(fh)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
