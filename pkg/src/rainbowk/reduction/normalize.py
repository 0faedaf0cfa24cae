"""Normalization of 3-CNF to exactly-3-distinct-variable clauses with at
most 4 occurrences per variable, preserving satisfiability.

Two mechanisms:

- occurrence splitting: a variable in more than 4 clauses becomes a ring of
  copies tied together by implication clauses, one per ring edge, whose
  third literal is a forced-false padding variable (so each copy sits in
  exactly 3 clauses: one original, one ring-in, one ring-out);
- clause padding: clauses left with 1 or 2 distinct variables after
  literal deduplication receive forced-false padding literals.

Forced-false variables come from a pool.  Its seeds are disjoint copies of
a 5-clause gadget over variables (z, a, b, c):

    (~z | a | b)  (~z | ~a | c)  (~z | ~b | ~c)  (a | ~b | c)  (~a | b | ~c)

The three z-clauses exclude six of the eight side patterns when z is true
and the last two clauses exclude the remaining two, so z is entailed
false, while the all-false assignment satisfies everything.  z sits in 3
clauses (one slot free), the sides in exactly 4.  Each further pool
variable f is forced by a single clause (~f | g | h) over two previously
forced variables with free slots, leaving f three free slots of its own;
three seed gadgets are enough to keep two distinct spare carriers alive
forever.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..cnf import CnfFormula

# (z, a, b, c) as offsets 0..3; True = positive literal.
_SEED_GADGET = (
    ((0, False), (1, True), (2, True)),
    ((0, False), (1, False), (3, True)),
    ((0, False), (2, False), (3, False)),
    ((1, True), (2, False), (3, True)),
    ((1, False), (2, True), (3, False)),
)


@dataclass
class NormalizeTrace:
    """Maps between the source formula and its normalized form.

    copies[x] lists the ring copies replacing source variable x (first
    entry is x itself); forced_false holds every pool and gadget-z
    variable; gadget_vars holds all seed-gadget variables.  Source
    assignments lift by copying values along the rings and setting every
    helper variable false; normalized assignments pull back by reading the
    first copy.
    """

    source_nvars: int
    target_nvars: int
    copies: dict[int, list[int]] = field(default_factory=dict)
    forced_false: list[int] = field(default_factory=list)
    gadget_vars: list[int] = field(default_factory=list)
    identity: bool = False

    def lift_assignment(self, assignment) -> list[bool]:
        if len(assignment) != self.source_nvars:
            raise ValueError("assignment length mismatch")
        if self.identity:
            return list(assignment)
        out = [False] * self.target_nvars
        for x in range(1, self.source_nvars + 1):
            for cp in self.copies.get(x, [x]):
                out[cp - 1] = assignment[x - 1]
        return out

    def pull_back_assignment(self, assignment) -> list[bool]:
        if len(assignment) != self.target_nvars:
            raise ValueError("assignment length mismatch")
        out = []
        for x in range(1, self.source_nvars + 1):
            rep = self.copies.get(x, [x])[0]
            out.append(assignment[rep - 1])
        return out


class _FalsePool:
    """Allocator of forced-false literals, each usable a bounded number of times."""

    def __init__(self, next_var: int):
        self.next_var = next_var
        self.clauses: list[tuple[int, ...]] = []
        self.credits: dict[int, int] = {}
        self.all_false: list[int] = []
        self.gadget_vars: list[int] = []

    def _seed(self) -> None:
        base = self.next_var
        self.next_var += 4
        z, a, b, c = base, base + 1, base + 2, base + 3
        table = (z, a, b, c)
        for cl in _SEED_GADGET:
            self.clauses.append(tuple(table[i] if pos else -table[i] for i, pos in cl))
        self.credits[z] = 1
        self.all_false.append(z)
        self.gadget_vars.extend(table)

    def _mint(self) -> None:
        carriers = sorted(v for v, c in self.credits.items() if c > 0)
        while len(carriers) < 2:
            self._seed()
            carriers = sorted(v for v, c in self.credits.items() if c > 0)
        g, h = carriers[0], carriers[1]
        for v in (g, h):
            self.credits[v] -= 1
            if self.credits[v] == 0:
                del self.credits[v]
        f = self.next_var
        self.next_var += 1
        self.clauses.append((-f, g, h))
        self.credits[f] = 3
        self.all_false.append(f)

    def take(self, exclude=()) -> int:
        """A forced-false variable not in `exclude`, consuming one use slot."""
        while True:
            avail = sorted(v for v, c in self.credits.items() if c > 0 and v not in exclude)
            if avail:
                v = avail[0]
                self.credits[v] -= 1
                if self.credits[v] == 0:
                    del self.credits[v]
                return v
            self._mint()


def normalize_cnf(phi: CnfFormula) -> tuple[CnfFormula, NormalizeTrace]:
    """Equisatisfiable formula with exactly 3 distinct variables per clause
    and at most 4 occurrences per variable.

    Input clauses may hold at most 3 literals.  Duplicate literals are
    merged and tautological clauses dropped first.  Already conforming
    formulas come back unchanged with an identity trace.
    """
    cleaned: list[tuple[int, ...]] = []
    for cl in phi.clauses:
        if len(cl) > 3:
            raise ValueError("input must be a 3-CNF (clauses of <= 3 literals)")
        lits, seen, taut = [], set(), False
        for lit in cl:
            if -lit in seen:
                taut = True
                break
            if lit not in seen:
                seen.add(lit)
                lits.append(lit)
        if not taut:
            cleaned.append(tuple(lits))

    if tuple(cleaned) == phi.clauses and phi.is_normalized():
        return phi, NormalizeTrace(
            source_nvars=phi.nvars, target_nvars=phi.nvars, identity=True
        )

    trace = NormalizeTrace(source_nvars=phi.nvars, target_nvars=phi.nvars)
    pool = _FalsePool(next_var=phi.nvars + 1)

    # Occurrence splitting.  occurrences counts cleaned clauses only; a
    # split variable ends with 3 occurrences per copy (original + two ring
    # clauses), an unsplit one keeps its count, <= 4.
    occurrences: dict[int, int] = {}
    for cl in cleaned:
        for lit in cl:
            occurrences[abs(lit)] = occurrences.get(abs(lit), 0) + 1
    slot_map: dict[int, list[int]] = {}
    ring_clauses: list[tuple[int, int]] = []  # implications (from, to), padded later
    for x in sorted(occurrences):
        t = occurrences[x]
        if t <= 4:
            continue
        copies = [x]
        for _ in range(t - 1):
            copies.append(pool.next_var)
            pool.next_var += 1
        trace.copies[x] = copies
        slot_map[x] = list(copies)
        for i in range(t):
            ring_clauses.append((copies[i], copies[(i + 1) % t]))

    rewritten: list[list[int]] = []
    consumed: dict[int, int] = {}
    for cl in cleaned:
        out = []
        for lit in cl:
            x = abs(lit)
            if x in slot_map:
                idx = consumed.get(x, 0)
                consumed[x] = idx + 1
                copy = slot_map[x][idx]
                out.append(copy if lit > 0 else -copy)
            else:
                out.append(lit)
        rewritten.append(out)

    final: list[tuple[int, ...]] = []
    for cl in rewritten:
        while len(cl) < 3:
            used = {abs(l) for l in cl}
            cl = cl + [pool.take(exclude=used)]
        final.append(tuple(cl))
    for src, dst in ring_clauses:
        f = pool.take(exclude={src, dst})
        final.append((-src, dst, f))
    final.extend(pool.clauses)

    trace.target_nvars = pool.next_var - 1
    trace.forced_false = list(pool.all_false)
    trace.gadget_vars = list(pool.gadget_vars)
    out = CnfFormula(nvars=trace.target_nvars, clauses=tuple(final))
    if not out.is_normalized():
        raise AssertionError("normalization missed a constraint; bug")
    return out, trace
