"""Exact game solver: retrograde analysis over the full position space.

A position is (sorted cop multiset, robber vertex, side to move).  Cops
move first each round, every piece may stay in place, and several cops
may share a vertex.  The solver sweeps backwards from capture positions:
a cop-turn position is winning when some successor is, a robber-turn
position when all successors are, tracked with per-position out-degree
counters so the fixpoint is linear in position-graph edges.  Steps count
cop moves, so steps_to_capture at a cop-turn position is the optimal
capture time from there.

Initial placement is quantified outside the table: cops pick the
multiset minimizing the worst robber reply.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import GraphView

__all__ = [
    "PositionTable",
    "BudgetError",
    "solve_k",
    "cop_number",
    "optimal_capture_time",
    "is_copwin_dismantlable",
    "DEFAULT_POSITION_BUDGET",
]

DEFAULT_POSITION_BUDGET = 50_000_000

COPS_TURN = 0
ROBBER_TURN = 1


class BudgetError(RuntimeError):
    """Position space exceeds the stated budget."""


@dataclass
class PositionTable:
    """Solved game table for k cops on a fixed graph."""

    g: GraphView
    k: int
    multisets: list[tuple[int, ...]]
    multiset_index: dict[tuple[int, ...], int]
    cop_succ: list[list[int]]
    nbh: list[list[int]]
    win: list[bool]
    steps: list[int]

    def pos(self, ci: int, robber: int, turn: int) -> int:
        return (ci * self.g.n + robber) * 2 + turn

    def index_of(self, cops: tuple[int, ...]) -> int:
        key = tuple(sorted(cops))
        if key not in self.multiset_index:
            raise ValueError(f"not a valid cop multiset: {cops}")
        return self.multiset_index[key]

    def is_win(self, cops: tuple[int, ...], robber: int, turn: int) -> bool:
        return self.win[self.pos(self.index_of(cops), robber, turn)]

    def steps_to_capture(self, cops: tuple[int, ...], robber: int, turn: int) -> int | None:
        s = self.steps[self.pos(self.index_of(cops), robber, turn)]
        return None if s < 0 else s

    def winning_placements(self) -> list[tuple[int, ...]]:
        """Cop multisets that win against every robber reply."""
        n = self.g.n
        out = []
        for ci, ms in enumerate(self.multisets):
            if all(self.win[(ci * n + r) * 2 + COPS_TURN] for r in range(n)):
                out.append(ms)
        return out

    def best_placement(self) -> tuple[tuple[int, ...], int] | None:
        """(placement, capture time) minimizing the worst robber reply."""
        n = self.g.n
        best: tuple[tuple[int, ...], int] | None = None
        for ci, ms in enumerate(self.multisets):
            worst = -1
            ok = True
            for r in range(n):
                p = (ci * n + r) * 2 + COPS_TURN
                if not self.win[p]:
                    ok = False
                    break
                worst = max(worst, self.steps[p])
            if ok and (best is None or worst < best[1]):
                best = (ms, worst)
        return best

    def check_consistency(self) -> list[str]:
        """Re-verify the Bellman equations at every position."""
        n = self.g.n
        bad: list[str] = []
        for ci, ms in enumerate(self.multisets):
            captured = set(ms)
            for r in range(n):
                for turn in (COPS_TURN, ROBBER_TURN):
                    p = (ci * n + r) * 2 + turn
                    if r in captured:
                        if not self.win[p] or self.steps[p] != 0:
                            bad.append(f"capture position {ms},{r},{turn} mislabeled")
                        continue
                    if turn == COPS_TURN:
                        succ = [(cj * n + r) * 2 + ROBBER_TURN for cj in self.cop_succ[ci]]
                        wins = [self.steps[q] for q in succ if self.win[q]]
                        expect_win = bool(wins)
                        expect_steps = 1 + min(wins) if wins else -1
                    else:
                        succ = [(ci * n + rr) * 2 + COPS_TURN for rr in self.nbh[r]]
                        all_win = all(self.win[q] for q in succ)
                        expect_win = all_win
                        expect_steps = max(self.steps[q] for q in succ) if all_win else -1
                    if self.win[p] != expect_win or self.steps[p] != expect_steps:
                        bad.append(
                            f"position {ms},{r},{'CR'[turn]}: "
                            f"stored win={self.win[p]} steps={self.steps[p]}, "
                            f"recomputed win={expect_win} steps={expect_steps}"
                        )
        return bad


def _cop_successors(
    multisets: list[tuple[int, ...]],
    mindex: dict[tuple[int, ...], int],
    nbh: list[list[int]],
) -> list[list[int]]:
    succ: list[list[int]] = []
    for ms in multisets:
        seen: set[tuple[int, ...]] = set()
        for combo in itertools.product(*(nbh[c] for c in ms)):
            seen.add(tuple(sorted(combo)))
        succ.append(sorted(mindex[t] for t in seen))
    return succ


def solve_k(
    g: GraphView, k: int, position_budget: int = DEFAULT_POSITION_BUDGET
) -> PositionTable:
    """Solve the k-cop game on g by backward induction."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = g.n
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    multisets = list(itertools.combinations_with_replacement(range(n), k))
    total_positions = len(multisets) * n * 2
    if total_positions > position_budget:
        raise BudgetError(
            f"{total_positions} positions exceed budget {position_budget} "
            f"(n={n}, k={k})"
        )
    mindex = {ms: i for i, ms in enumerate(multisets)}
    nbh = [sorted([v] + [int(x) for x in g.adjacency(v)]) for v in range(n)]
    cop_succ = _cop_successors(multisets, mindex, nbh)

    win = [False] * total_positions
    steps = [-1] * total_positions
    counter = [0] * (len(multisets) * n)  # robber-turn out-degrees

    cop_wins: list[tuple[int, int]] = []  # (ci, r) newly won at current level
    robber_wins: list[tuple[int, int]] = []
    for ci, ms in enumerate(multisets):
        on_cops = set(ms)
        base = ci * n
        for r in range(n):
            if r in on_cops:
                p = (base + r) * 2
                win[p] = True
                steps[p] = 0
                win[p + 1] = True
                steps[p + 1] = 0
                cop_wins.append((ci, r))
                robber_wins.append((ci, r))
            else:
                counter[base + r] = len(nbh[r])

    level = 0
    while cop_wins or robber_wins:
        # cop-turn wins at this level feed robber-turn counters
        for ci, r in cop_wins:
            base = ci * n
            for rp in nbh[r]:
                q = base + rp
                qq = q * 2 + ROBBER_TURN
                if win[qq]:
                    continue
                counter[q] -= 1
                if counter[q] == 0:
                    win[qq] = True
                    steps[qq] = level
                    robber_wins.append((ci, rp))
        # robber-turn wins propagate to cop-turn predecessors one level up
        next_cop_wins: list[tuple[int, int]] = []
        for ci, r in robber_wins:
            for cj in cop_succ[ci]:
                p = (cj * n + r) * 2 + COPS_TURN
                if win[p]:
                    continue
                win[p] = True
                steps[p] = level + 1
                next_cop_wins.append((cj, r))
        cop_wins = next_cop_wins
        robber_wins = []
        level += 1

    return PositionTable(g, k, multisets, mindex, cop_succ, nbh, win, steps)


def cop_number(
    g: GraphView, k_max: int | None = None, position_budget: int = DEFAULT_POSITION_BUDGET
) -> int:
    """Least k such that k cops have a winning placement.

    For a disconnected graph the answer is the sum over components of
    their cop numbers; this implementation solves the whole graph
    directly, which gives the same value, and k_max caps the search
    (default n).
    """
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    cap = g.n if k_max is None else k_max
    for k in range(1, cap + 1):
        table = solve_k(g, k, position_budget=position_budget)
        if table.winning_placements():
            return k
    raise ValueError(f"no winning placement with up to {cap} cops")


def optimal_capture_time(
    g: GraphView, k: int, position_budget: int = DEFAULT_POSITION_BUDGET
) -> int:
    """Optimal capture time for k cops under best play on both sides."""
    table = solve_k(g, k, position_budget=position_budget)
    best = table.best_placement()
    if best is None:
        raise ValueError(f"{k} cops do not win on this graph")
    return best[1]


def is_copwin_dismantlable(g: GraphView) -> bool:
    """Whether iterated corner removal dismantles g to one vertex.

    A corner is a vertex u with N[u] <= N[v] for some other live v; the
    lowest-id corner is removed each round.  Equivalent to the one-cop
    game being a cop win.
    """
    n = g.n
    if n == 0:
        return False
    masks = {}
    for v in range(n):
        m = 1 << v
        for w in g.adjacency(v):
            m |= 1 << int(w)
        masks[v] = m
    alive = set(range(n))
    while len(alive) > 1:
        corner = None
        for u in sorted(alive):
            mu = masks[u]
            if any(v != u and (mu & ~masks[v]) == 0 for v in alive):
                corner = u
                break
        if corner is None:
            return False
        alive.remove(corner)
        bit = ~(1 << corner)
        for v in alive:
            masks[v] &= bit
    return True
