"""Hilbert data, e^T, T-split checks and CM certificates over local rings.

Everything goes through the problem-file runner; the helpers below build
small problem files so common one-off questions need no file at all.
"""

import json

try:
    from . import _cmloc
except ImportError:  # in-tree build: _cmloc sits on PYTHONPATH next to this package
    import _cmloc

ProblemError = _cmloc.ProblemError
format_problem = _cmloc.format_problem
fixture = _cmloc.fixture
task_verbs = _cmloc.task_verbs

__all__ = [
    "ProblemError",
    "Report",
    "run",
    "format_problem",
    "fixture",
    "task_verbs",
    "hilbert",
    "etor",
    "tsplit",
]


class Report(dict):
    """Decoded JSON report; `exit_code` is what the command-line tool would return."""

    def __init__(self, text, exit_code):
        super().__init__(json.loads(text))
        self.text = text
        self.exit_code = exit_code

    @property
    def results(self):
        return [t.get("result") for t in self["tasks"]]


def run(text, **overrides):
    """Run a problem file given as text. Keyword overrides: p, seed, base, buffer, window, cap, trials."""
    report, code = _cmloc.run_problem(text, **overrides)
    return Report(report, code)


def _module_problem(vars, ideal, gens, relations, tasks, p=None):
    lines = ["ring A: vars=" + ",".join(vars) + ("" if p is None else f" p={p}")]
    if ideal:
        lines.append("ideal A: " + ", ".join(ideal))
    lines.append("module M over A: gens=" + ",".join(gens))
    for col in relations:
        lines.append("relation M: " + ", ".join(col))
    lines += [f"task: {t} M" for t in tasks]
    return "\n".join(lines) + "\n"


def _single(report):
    task = report["tasks"][0]
    if task["status"] != "ok":
        raise RuntimeError(task["error"])
    return task["result"]


def hilbert(vars, ideal, gens=("e",), relations=(), p=None, **overrides):
    """Hilbert data of M = A^gens / relations with A = k[vars]/(ideal) localized at the origin."""
    return _single(run(_module_problem(vars, ideal, gens, relations, ["hilbert"], p), **overrides))


def etor(vars, ideal, gens=("e",), relations=(), p=None, **overrides):
    """e^T(M) by growth fit and by the closed formula."""
    return _single(run(_module_problem(vars, ideal, gens, relations, ["etor"], p), **overrides))


def tsplit(vars, ideal, n, m, cocycle, p=None, **overrides):
    """T-split check for the extension of M by N given by a cocycle.

    n, m: (gens, relations) pairs; cocycle: list of columns.
    """
    lines = ["ring A: vars=" + ",".join(vars) + ("" if p is None else f" p={p}")]
    if ideal:
        lines.append("ideal A: " + ", ".join(ideal))
    for name, (gens, rels) in (("N", n), ("M", m)):
        lines.append(f"module {name} over A: gens=" + ",".join(gens))
        lines += [f"relation {name}: " + ", ".join(col) for col in rels]
    lines.append("extension s: N=N M=M")
    lines += ["cocycle s: " + ", ".join(col) for col in cocycle]
    lines.append("task: tsplit s")
    return _single(run("\n".join(lines) + "\n", **overrides))
