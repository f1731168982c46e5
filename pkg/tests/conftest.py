import sys
from functools import lru_cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from curvedkoszul.cli import FIXTURES, load_fixture  # noqa: E402
from curvedkoszul.qlc_presentation import split  # noqa: E402

ASSOCIATIVE = [f for f in FIXTURES if load_fixture(f).mode == "associative"]
COMMUTATIVE = [f for f in FIXTURES if load_fixture(f).mode == "commutative"]


@lru_cache(maxsize=None)
def fixture_split(name):
    """Split of the associative presentation (the envelope for commutative fixtures)."""
    return split(load_fixture(name).associative_envelope())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
