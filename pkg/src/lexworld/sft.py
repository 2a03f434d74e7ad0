"""Finite automata for lexicographic subshifts with eventually periodic bounds.

A state is the pair of bound sequences currently binding the word read so
far: the suffix of alpha still to be respected by the earliest start whose
suffix is a prefix of alpha, and likewise for beta. Because both bounds are
eventually periodic the set of states is finite. When the binding start
loosens, every later start loosens too (a consequence of alpha dominating its
shifts), so the state falls back to alpha itself.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .entropy import entropy_of
from .kernels import count_backtrack
from .seq import EPSeq, require_admissible

State = tuple[EPSeq, EPSeq]
TIE_TOL = 1e-9


class TrivialComponent(ValueError):
    pass


@dataclass
class Automaton:
    alpha: EPSeq
    beta: EPSeq
    states: list[State]
    start: int
    # delta[i][s] is the successor index or None
    delta: list[list[int | None]]
    trimmed: bool = False

    @classmethod
    def build(cls, alpha: EPSeq, beta: EPSeq, *, check: bool = True) -> "Automaton":
        if check:
            require_admissible(alpha, beta)
        start: State = (alpha, beta)
        index = {start: 0}
        states = [start]
        delta: list[list[int | None]] = []
        queue = deque([start])
        while queue:
            a, b = queue.popleft()
            row: list[int | None] = [None, None]
            for s in (0, 1):
                if not b[0] <= s <= a[0]:
                    continue
                nxt = (a.shift(1) if s == a[0] else alpha, b.shift(1) if s == b[0] else beta)
                if nxt not in index:
                    index[nxt] = len(states)
                    states.append(nxt)
                    queue.append(nxt)
                row[s] = index[nxt]
            delta.append(row)
        return cls(alpha, beta, states, 0, delta)

    def __len__(self) -> int:
        return len(self.states)

    def edges(self) -> list[tuple[int, int, int]]:
        return [(i, s, j) for i, row in enumerate(self.delta) for s, j in enumerate(row) if j is not None]

    def count_paths(self, n: int) -> int:
        """Number of labelled paths of length n from the start state."""
        vec = [0] * len(self)
        vec[self.start] = 1
        for _ in range(n):
            nxt = [0] * len(self)
            for i, c in enumerate(vec):
                if c:
                    for j in self.delta[i]:
                        if j is not None:
                            nxt[j] += c
            vec = nxt
        return sum(vec)

    def trim(self) -> "Automaton":
        """Keep states lying on a bi-infinite path (some cycle before and after)."""
        n = len(self)
        alive = set(range(n))
        changed = True
        while changed:
            changed = False
            has_in = {j for i in alive for j in self.delta[i] if j is not None and j in alive}
            for i in list(alive):
                has_out = any(j is not None and j in alive for j in self.delta[i])
                if not has_out or i not in has_in:
                    alive.discard(i)
                    changed = True
        keep = sorted(alive)
        remap = {old: new for new, old in enumerate(keep)}
        delta = [[remap.get(j) if j is not None else None for j in self.delta[i]] for i in keep]
        start = remap.get(self.start, 0)
        return Automaton(self.alpha, self.beta, [self.states[i] for i in keep], start, delta, True)

    def minimise(self) -> "Automaton":
        """Merge states with equal follower sets (Moore partition refinement)."""
        n = len(self)
        block = [0] * n
        while True:
            sig = {}
            new = []
            for i in range(n):
                key = (block[i],) + tuple(-1 if j is None else block[j] for j in self.delta[i])
                new.append(sig.setdefault(key, len(sig)))
            if len(set(new)) == len(set(block)):
                break
            block = new
        # renumber blocks in order of first appearance
        order: dict[int, int] = {}
        for b in block:
            order.setdefault(b, len(order))
        reps = {}
        for i in range(n):
            reps.setdefault(order[block[i]], i)
        delta = [
            [None if j is None else order[block[j]] for j in self.delta[reps[k]]] for k in range(len(order))
        ]
        states = [self.states[reps[k]] for k in range(len(order))]
        return Automaton(self.alpha, self.beta, states, order[block[self.start]], delta, self.trimmed)

    def to_edge_list(self) -> str:
        return "".join(f"{i} {s} {j}\n" for i, s, j in self.edges())

    def to_dot(self) -> str:
        lines = ["digraph lexworld {"]
        for i, (a, b) in enumerate(self.states):
            shape = "doublecircle" if i == self.start else "circle"
            lines.append(f'  {i} [shape={shape}, label="{i}\\n{a}\\n{b}"];')
        for i, s, j in self.edges():
            lines.append(f'  {i} -> {j} [label="{s}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_automaton(alpha: EPSeq, beta: EPSeq) -> Automaton:
    return Automaton.build(alpha, beta)


def _bound_bytes(x: EPSeq, n: int) -> bytes:
    return bytes(x[i] for i in range(n))


def count_words_backtrack(alpha: EPSeq, beta: EPSeq, n: int) -> int:
    return count_backtrack(_bound_bytes(alpha, n), _bound_bytes(beta, n), n)


def count_words(alpha: EPSeq, beta: EPSeq, n: int, *, check: bool = False) -> int:
    """|B_n|. With ``check`` the automaton count is compared to the backtracking count."""
    if n < 1:
        raise ValueError("n must be at least 1")
    aut = Automaton.build(alpha, beta)
    count = aut.count_paths(n)
    if check:
        other = count_words_backtrack(alpha, beta, n)
        if other != count:
            raise AssertionError(f"word counts disagree at n={n}: {count} vs {other}")
    return count


def _tarjan(n: int, succ: list[list[int]]) -> list[list[int]]:
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # iterative DFS keeping (node, next child position)
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class PerronData:
    radius: float
    lower: float
    upper: float
    right: np.ndarray = field(repr=False)
    left: np.ndarray = field(repr=False)


def _perron_vector(m: np.ndarray, tol: float = 1e-13, max_iter: int = 100000) -> np.ndarray:
    # A + I is primitive for irreducible A; its Perron vector is that of A
    k = m.shape[0]
    shifted = m + np.eye(k)
    x = np.ones(k) / k
    for _ in range(max_iter):
        y = shifted @ x
        y /= y.sum()
        if np.max(np.abs(y - x)) < tol:
            x = y
            break
        x = y
    # polish with inverse iteration just above the Rayleigh estimate
    mu = float(x @ (m @ x) / (x @ x)) * (1 + 1e-10) + 1e-12
    for _ in range(3):
        try:
            y = np.linalg.solve(m - mu * np.eye(k), x)
        except np.linalg.LinAlgError:
            break
        y = np.abs(y) / np.abs(y).sum()
        if not np.all(np.isfinite(y)) or np.any(y <= 0):
            break
        x = y
    return x


def perron(m: np.ndarray) -> PerronData:
    """Spectral radius of an irreducible nonnegative matrix with Collatz-Wielandt bounds."""
    r = _perron_vector(m)
    l = _perron_vector(m.T)
    ratios = (m @ r) / r
    lower, upper = float(ratios.min()), float(ratios.max())
    return PerronData((lower + upper) / 2, lower, upper, r, l)


@dataclass(frozen=True)
class ComponentReport:
    id: int
    states: tuple[int, ...]
    perron_entropy_bits: float
    is_trivial_cycle: bool
    radius_bounds: tuple[float, float] = (1.0, 1.0)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "states": list(self.states),
            "perron_entropy_bits": self.perron_entropy_bits,
            "is_trivial_cycle": self.is_trivial_cycle,
        }


def _component_matrix(aut: Automaton, comp: list[int]) -> np.ndarray:
    pos = {s: i for i, s in enumerate(comp)}
    m = np.zeros((len(comp), len(comp)))
    for s in comp:
        for t in aut.delta[s]:
            if t is not None and t in pos:
                m[pos[s], pos[t]] += 1
    return m


def components(aut: Automaton) -> list[ComponentReport]:
    """Nontrivial strongly connected components, by Perron entropy descending."""
    succ = [[j for j in row if j is not None] for row in aut.delta]
    found = []
    for comp in _tarjan(len(aut), succ):
        members = set(comp)
        inner = [[j for j in succ[s] if j in members] for s in comp]
        if not any(inner):
            continue
        if all(len(x) == 1 for x in inner):
            found.append((comp, 0.0, True, (1.0, 1.0)))
            continue
        pd = perron(_component_matrix(aut, comp))
        found.append((comp, max(0.0, math.log2(pd.radius)), False, (pd.lower, pd.upper)))
    found.sort(key=lambda c: (-c[1], c[0]))
    return [ComponentReport(i, tuple(c), h, triv, b) for i, (c, h, triv, b) in enumerate(found)]


def oracle_automaton(alpha: EPSeq, beta: EPSeq) -> Automaton:
    """Trimmed and minimised automaton used for component analysis."""
    return Automaton.build(alpha, beta).trim().minimise()


def components_of(alpha: EPSeq, beta: EPSeq) -> list[ComponentReport]:
    return components(oracle_automaton(alpha, beta))


@dataclass(frozen=True)
class MaxEntropyMeasure:
    component_id: int
    states: tuple[int, ...]
    weights: dict[int, float]
    # (state, symbol, successor) -> probability
    transitions: dict[tuple[int, int, int], float]

    def entropy_bits(self) -> float:
        return -sum(self.weights[s] * p * math.log2(p) for (s, _, _), p in self.transitions.items() if p > 0)

    def to_dict(self) -> dict:
        return {
            "component_id": self.component_id,
            "weights": {str(k): v for k, v in self.weights.items()},
            "transitions": [[s, a, t, p] for (s, a, t), p in sorted(self.transitions.items())],
            "entropy_bits": self.entropy_bits(),
        }


def parry_measure(aut: Automaton, component_id: int = 0) -> MaxEntropyMeasure:
    reports = components(aut)
    try:
        rep = reports[component_id]
    except IndexError:
        raise TrivialComponent(f"no nontrivial component with id {component_id}") from None
    comp = list(rep.states)
    if len(comp) == 0:
        raise TrivialComponent("empty component")
    members = set(comp)
    pos = {s: i for i, s in enumerate(comp)}
    if rep.is_trivial_cycle:
        weights = {s: 1.0 / len(comp) for s in comp}
        trans = {
            (s, a, t): 1.0 for s in comp for a, t in enumerate(aut.delta[s]) if t is not None and t in members
        }
        return MaxEntropyMeasure(rep.id, tuple(comp), weights, trans)
    pd = perron(_component_matrix(aut, comp))
    lam, r, l = pd.radius, pd.right, pd.left
    trans = {}
    for s in comp:
        for a, t in enumerate(aut.delta[s]):
            if t is not None and t in members:
                trans[(s, a, t)] = r[pos[t]] / (lam * r[pos[s]])
    pi = l * r
    pi = pi / pi.sum()
    weights = {s: float(pi[pos[s]]) for s in comp}
    return MaxEntropyMeasure(rep.id, tuple(comp), weights, trans)


@dataclass(frozen=True)
class IEVerdict:
    kind: str  # IntrinsicallyErgodic, NotIntrinsicallyErgodic, ZeroEntropy, TieWithinTolerance
    component_ids: tuple[int, ...] = ()
    witness: dict | None = None

    @property
    def is_ie(self) -> bool:
        return self.kind == "IntrinsicallyErgodic"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "component_ids": list(self.component_ids), "witness": self.witness}


def ie_verdict(alpha: EPSeq, beta: EPSeq) -> IEVerdict:
    require_admissible(alpha, beta)
    reports = components_of(alpha, beta)
    positive = [c for c in reports if not c.is_trivial_cycle and c.perron_entropy_bits > TIE_TOL]
    if not positive:
        return IEVerdict("ZeroEntropy")
    top = positive[0].perron_entropy_bits
    tied = [c for c in positive if top - c.perron_entropy_bits <= TIE_TOL]
    if len(tied) == 1:
        return IEVerdict("IntrinsicallyErgodic", (tied[0].id,))
    from .renorm import hofbauer_check

    witness = hofbauer_check(alpha, beta)
    if witness is not None:
        return IEVerdict("NotIntrinsicallyErgodic", tuple(c.id for c in tied[:2]), witness.to_dict())
    return IEVerdict("TieWithinTolerance", tuple(c.id for c in tied))


def kneading_gap(alpha: EPSeq, beta: EPSeq) -> float:
    """|kneading entropy - max Perron entropy|, the cross-check between the two routes."""
    reports = components_of(alpha, beta)
    top = reports[0].perron_entropy_bits if reports else 0.0
    return abs(entropy_of(alpha, beta).h_bits - top)


def reports_json(reports: list[ComponentReport]) -> str:
    return json.dumps([r.to_dict() for r in reports])
