import itertools

import numpy as np

from hybridmat import BlockSpec


def formula(tag):
    """Integer payload defined at every local index, distinct per tag."""
    return lambda i, j: tag * 1000 + 37 * i + 11 * j + (i * j) % 7


def spec2x2(name, rows, cols, row_cut, col_cut, base=0):
    blocks = {(i, j): formula(base + 3 * i + j) for i in (1, 2) for j in (1, 2)}
    return BlockSpec(name, [0, row_cut, rows], [0, col_cut, cols], blocks)


class Strict:
    """Table payload that fails the test when read outside its shape."""

    def __init__(self, entries, label="?"):
        self.entries = np.array(entries, dtype=object)
        self.label = label
        self.calls = []

    def __call__(self, i, j):
        self.calls.append((i, j))
        rows, cols = self.entries.shape
        if not (0 <= i < rows and 0 <= j < cols):
            raise AssertionError(f"{self.label} probed at ({i}, {j}) outside {rows}x{cols}")
        return self.entries[i, j]


def strict_blocks(dense, row_cuts, col_cuts, label):
    """Cut a dense array into Strict payloads along bound, nondecreasing cuts."""
    out = {}
    for bi, bj in itertools.product(range(len(row_cuts) - 1), range(len(col_cuts) - 1)):
        part = dense[row_cuts[bi] : row_cuts[bi + 1], col_cuts[bj] : col_cuts[bj + 1]]
        out[bi + 1, bj + 1] = Strict(part, f"{label}{bi + 1}{bj + 1}")
    return out


def brute_interval(a, b, lc, rc, x):
    """Multiplicity of a hybrid interval from first principles."""

    def inside(lo, hi, left, right):
        return (lo < x or (left and lo == x)) and (x < hi or (right and x == hi))

    return int(inside(a, b, lc, rc)) - int(inside(b, a, not rc, not lc))


# one summary line per acceptance criterion

_criteria = {}
_outcomes = {}


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            number = mark.args[0]
            doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
            docs = _criteria.setdefault(number, [])
            if doc not in docs:
                docs.append(doc)
            _outcomes.setdefault(number, {})[item.nodeid] = "NOT RUN"


def pytest_runtest_logreport(report):
    for number, tests in _outcomes.items():
        if report.nodeid in tests:
            if report.when == "call" or report.failed or report.skipped:
                if report.failed:
                    tests[report.nodeid] = "FAIL"
                elif report.skipped:
                    tests[report.nodeid] = "SKIP"
                elif tests[report.nodeid] != "FAIL":
                    tests[report.nodeid] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        states = set(_outcomes[number].values())
        if states == {"PASS"}:
            verdict = "PASS"
        elif "FAIL" in states:
            verdict = "FAIL"
        else:
            verdict = sorted(states - {"PASS"})[0]
        label = "; ".join(_criteria[number])
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {label}")

