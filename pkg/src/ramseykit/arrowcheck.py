"""Decide finite Ramsey arrows ``C -> (B)^A_{k,t}`` over hom-set quotients.

The arrow fails exactly when some k-coloring of classes(A, C) makes every
``w: B -> C`` see more than t colors on ``w . classes(A, B)``.  Each w becomes
a constraint on the set of class indices it touches; a counterexample is a
coloring satisfying all constraints.  Two searches are provided: plain
enumeration (the reference) and backtracking with pruning.  Both scan
colorings in lexicographic order, so both return the lexicographically least
counterexample.
"""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable

from .quotients import (
    Coloring,
    GroupFamily,
    HomClass,
    get_category,
    hom_classes,
    image_colors,
)

log = logging.getLogger(__name__)

DEFAULT_NAIVE_CAP = 2**22
DEFAULT_CLASS_CAP = 40
SPLIT_DEPTH = 4


class CapExceeded(RuntimeError):
    def __init__(self, message: str, required: int, cap: int):
        super().__init__(message)
        self.required = required
        self.cap = cap

    def to_json(self):
        return {"error": "cap_exceeded", "message": str(self), "required": self.required, "cap": self.cap}


def naive_cap_from_env() -> int:
    raw = os.environ.get("RAMSEY_CAP_COLORINGS")
    return int(raw) if raw else DEFAULT_NAIVE_CAP


def object_to_json(obj):
    return obj if isinstance(obj, int) else obj.to_json()


@dataclass
class ArrowQuery:
    category: str
    A: Any
    B: Any
    C: Any
    k: int
    t: int
    family: GroupFamily = field(default_factory=GroupFamily)

    def validate(self):
        cat = get_category(self.category)
        if self.k < 1 or self.t < 1:
            raise ValueError("k and t must be positive")
        if not cat.hom(self.A, self.B):
            raise ValueError("hom(A, B) is empty")
        if not cat.hom(self.B, self.C):
            raise ValueError("hom(B, C) is empty")

    def to_json(self):
        return {
            "category": get_category(self.category).name,
            "A": object_to_json(self.A),
            "B": object_to_json(self.B),
            "C": object_to_json(self.C),
            "k": self.k,
            "t": self.t,
            "family": self.family.to_json(),
        }


@dataclass
class ArrowResult:
    holds: bool
    counterexample: Coloring | None
    stats: dict
    query: ArrowQuery | None = None

    def to_json(self):
        d = {"holds": self.holds, "stats": dict(self.stats)}
        d["counterexample"] = None if self.counterexample is None else self.counterexample.to_json()
        if self.query is not None:
            d["query"] = self.query.to_json()
        return d


@dataclass(frozen=True)
class SearchProblem:
    """Index-level form of an arrow instance: find a k-coloring of ``n_vars``
    items such that every constraint set sees more than t colors."""

    n_vars: int
    k: int
    t: int
    constraints: tuple[tuple[int, ...], ...]
    # var_cons[i]: constraints whose largest member is >= i and that contain i
    var_cons: tuple[tuple[int, ...], ...]
    symmetries: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def build(cls, n_vars, k, t, constraints, symmetries=()):
        cons = tuple(sorted(set(tuple(sorted(set(c))) for c in constraints)))
        var_cons = [[] for _ in range(n_vars)]
        for ci, c in enumerate(cons):
            for i in c:
                var_cons[i].append(ci)
        return cls(n_vars, k, t, cons, tuple(tuple(v) for v in var_cons), tuple(symmetries))

    def vacuous(self) -> bool:
        return all(min(self.k, len(c)) <= self.t for c in self.constraints)

    def is_counterexample(self, col) -> bool:
        t = self.t
        return all(len({col[i] for i in c}) > t for c in self.constraints)


def build_problem(q: ArrowQuery, symmetry: bool = False, class_cap: int | None = None):
    """Return (classes(A, C), SearchProblem)."""
    cat = get_category(q.category)
    classes = hom_classes(q.A, q.C, q.family, cat)
    if class_cap is not None and len(classes) > class_cap:
        raise CapExceeded(
            f"{len(classes)} classes in classes(A, C) exceed the backtracking cap {class_cap}",
            required=len(classes),
            cap=class_cap,
        )
    index = {}
    for i, c in enumerate(classes):
        for m in c.members:
            index[m.key] = i
    hom_AB = cat.hom(q.A, q.B)
    constraints = []
    for w in cat.hom(q.B, q.C):
        constraints.append([index[cat.compose(w, f).key] for f in hom_AB])
    perms = []
    if symmetry:
        for s in cat.automorphisms(q.C):
            p = tuple(index[cat.compose(s, c.representative).key] for c in classes)
            if p != tuple(range(len(classes))):
                perms.append(p)
        perms = sorted(set(perms))
    return classes, SearchProblem.build(len(classes), q.k, q.t, constraints, perms)


# --- backtracking -------------------------------------------------------------


def _dead_after(problem: SearchProblem, col: list, i: int) -> bool:
    """True if assigning ``col[i]`` (with 0..i colored) cannot lead to a counterexample."""
    k, t = problem.k, problem.t
    for ci in problem.var_cons[i]:
        c = problem.constraints[ci]
        seen = set()
        rest = 0
        for j in c:
            if j <= i:
                seen.add(col[j])
            else:
                rest += 1
        if min(k, len(seen) + rest) <= t:
            return True
    if problem.symmetries and _not_lex_leader(problem.symmetries, col, i + 1):
        return True
    return False


def _not_lex_leader(perms, col, p) -> bool:
    """Some symmetric image, with colors renumbered, is already smaller on the colored prefix."""
    for sigma in perms:
        ren = {}
        for i in range(p):
            j = sigma[i]
            if j >= p:
                break
            c = col[j]
            a = ren.setdefault(c, len(ren))
            b = col[i]
            if a < b:
                return True
            if a > b:
                break
    return False


def _dfs(problem: SearchProblem, col: list, start: int, used: int, stop_depth: int, out: list | None):
    """Depth-first search from ``col[:start]``.

    Returns (found_coloring_or_None, nodes, pruned).  If ``out`` is given,
    surviving prefixes of length ``stop_depth`` are appended to it instead of
    being explored further.
    """
    n, k = problem.n_vars, problem.k
    nodes = 0
    pruned = 0

    def rec(i, used):
        nonlocal nodes, pruned
        if i == stop_depth:
            if out is not None:
                out.append((tuple(col[:i]), used))
                return None
            if i == n:
                return tuple(col)
        for c in range(min(k, used + 1)):
            col[i] = c
            nodes += 1
            if _dead_after(problem, col, i):
                pruned += 1
                continue
            r = rec(i + 1, max(used, c + 1))
            if r is not None:
                return r
        col[i] = -1
        return None

    found = rec(start, used)
    return found, nodes, pruned


def _search_subtree(args):
    problem, prefix, used = args
    col = list(prefix) + [-1] * (problem.n_vars - len(prefix))
    if len(prefix) == problem.n_vars:
        return tuple(prefix), 0, 0
    return _dfs(problem, col, len(prefix), used, problem.n_vars, None)


def backtracking_search(problem: SearchProblem, workers: int = 1):
    """Lexicographically least counterexample or None, plus search statistics.

    The tree is cut at a fixed depth; subtrees are explored in order (in
    parallel when ``workers > 1``) and the first one holding a counterexample
    wins, so the outcome and the statistics do not depend on ``workers``.
    """
    n = problem.n_vars
    if n == 0:
        found = () if problem.is_counterexample(()) else None
        return found, {"nodes": 0, "pruned": 0, "subtrees": 0}
    depth = min(SPLIT_DEPTH, n)
    frontier: list = []
    col = [-1] * n
    _, nodes, pruned = _dfs(problem, col, 0, 0, depth, frontier)
    tasks = [(problem, prefix, used) for prefix, used in frontier]
    found = None
    explored = 0
    if workers > 1 and len(tasks) > 1:
        ex = ProcessPoolExecutor(max_workers=workers)
        try:
            for res in ex.map(_search_subtree, tasks):
                explored += 1
                nodes += res[1]
                pruned += res[2]
                if res[0] is not None:
                    found = res[0]
                    break
        finally:
            ex.shutdown(wait=True, cancel_futures=True)
    else:
        for task in tasks:
            res = _search_subtree(task)
            explored += 1
            nodes += res[1]
            pruned += res[2]
            if res[0] is not None:
                found = res[0]
                break
    return found, {"nodes": nodes, "pruned": pruned, "subtrees": explored}


def naive_search(problem: SearchProblem, cap: int | None = None):
    """Reference search: every k^n coloring in lexicographic order."""
    cap = naive_cap_from_env() if cap is None else cap
    total = problem.k ** problem.n_vars
    if total > cap:
        raise CapExceeded(f"{total} colorings exceed the enumeration cap {cap}", required=total, cap=cap)
    checked = 0
    for col in itertools.product(range(problem.k), repeat=problem.n_vars):
        checked += 1
        if problem.is_counterexample(col):
            return col, {"colorings": checked}
    return None, {"colorings": checked}


# --- public operations --------------------------------------------------------


def check_arrow(
    q: ArrowQuery,
    method: str = "backtrack",
    workers: int = 1,
    symmetry: bool = False,
    naive_cap: int | None = None,
    class_cap: int = DEFAULT_CLASS_CAP,
) -> ArrowResult:
    q.validate()
    classes, problem = build_problem(q, symmetry=symmetry, class_cap=class_cap if method == "backtrack" else None)
    stats = {"classes": len(classes), "constraints": len(problem.constraints), "method": method}
    if problem.vacuous():
        stats["vacuous"] = True
        return ArrowResult(True, None, stats, q)
    if method == "backtrack":
        found, s = backtracking_search(problem, workers)
    elif method == "naive":
        found, s = naive_search(problem, naive_cap)
    else:
        raise ValueError(f"unknown method {method!r}")
    stats.update(s)
    chi = None
    if found is not None:
        chi = Coloring(list(classes), {c: col for c, col in zip(classes, found)})
    return ArrowResult(found is None, chi, stats, q)


def min_threshold(A, B, C, k, family=None, category="direct", **kw) -> int:
    """Least t with ``C -> (B)^A_{k,t}``."""
    family = family or GroupFamily()
    cat = get_category(category)
    bound = min(k, len(hom_classes(A, B, family, cat)))
    for t in range(1, bound + 1):
        if check_arrow(ArrowQuery(cat.name, A, B, C, k, t, family), **kw).holds:
            return t
    # unreachable: at t = bound every w trivially sees <= t colors
    raise AssertionError("threshold search overran its trivial bound")


def search_witness(A, B, k, t, family=None, category="direct", candidates: Iterable = (), skipped: list | None = None, **kw):
    """First candidate C with ``C -> (B)^A_{k,t}``, or None.

    Candidates that exceed a cap are logged, appended to ``skipped`` as
    ``(candidate, CapExceeded)`` and passed over.
    """
    family = family or GroupFamily()
    cat = get_category(category)
    for C in candidates:
        if not cat.hom(B, C):
            continue
        try:
            res = check_arrow(ArrowQuery(cat.name, A, B, C, k, t, family), **kw)
        except CapExceeded as exc:
            log.warning("skipping candidate %r: %s", C, exc)
            if skipped is not None:
                skipped.append((C, exc))
            continue
        if res.holds:
            return C
    return None


def verify_lower_bound(chi: Coloring, B, bound: int, category="direct") -> bool:
    """Every ``w: B -> C`` sees at least ``bound`` colors of chi on ``w . classes(A, B)``."""
    cat = get_category(category)
    first = chi.domain[0]
    rep = first.representative if isinstance(first, HomClass) else first
    A, C = cat.source(rep), cat.target(rep)
    for f in cat.hom(A, C):
        try:
            chi.color_of_morphism(f)
        except KeyError:
            raise ValueError("coloring is partial on hom(A, C)") from None
    hom_AB = cat.hom(A, B)
    return all(len(image_colors(chi, w, hom_AB, cat)) >= bound for w in cat.hom(B, C))
