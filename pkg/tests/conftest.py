import pytest

from bellmod import make_context
from bellmod.sequences import bell_row, derangement_row


class RowCache:
    """Per-session cache of contexts and sequence rows.

    Row construction is O(p^2); the acceptance sweep and the unit tests
    revisit the same primes constantly, so share one copy.
    """

    def __init__(self):
        self._ctx = {}
        self._bell = {}
        self._drow = {}

    def ctx(self, p):
        if p not in self._ctx:
            self._ctx[p] = make_context(p)
        return self._ctx[p]

    def bell(self, p):
        if p not in self._bell:
            self._bell[p] = bell_row(self.ctx(p))
        return self._bell[p]

    def drow(self, p):
        if p not in self._drow:
            self._drow[p] = derangement_row(self.ctx(p))
        return self._drow[p]


@pytest.fixture(scope="session")
def cache():
    return RowCache()
