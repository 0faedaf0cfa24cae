"""CNF formulas and DIMACS I/O."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FormatError


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are tuples of nonzero signed 1-based literals."""

    nvars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for cl in self.clauses:
            if not cl:
                raise ValueError("empty clause")
            for lit in cl:
                if lit == 0 or abs(lit) > self.nvars:
                    raise ValueError(f"literal {lit} out of range for {self.nvars} variables")

    @property
    def nclauses(self) -> int:
        return len(self.clauses)

    def occurrence_counts(self) -> list[int]:
        counts = [0] * (self.nvars + 1)
        for cl in self.clauses:
            for lit in cl:
                counts[abs(lit)] += 1
        return counts

    def is_normalized(self) -> bool:
        """Exactly three distinct variables per clause, <= 4 occurrences each."""
        for cl in self.clauses:
            if len(cl) != 3 or len({abs(l) for l in cl}) != 3:
                return False
        return all(c <= 4 for c in self.occurrence_counts())


def evaluate(phi: CnfFormula, assignment) -> bool:
    """assignment[i] is the value of variable i+1."""
    return all(
        any((lit > 0) == assignment[abs(lit) - 1] for lit in cl) for cl in phi.clauses
    )


def solve_brute_force(phi: CnfFormula, *, limit_bits: int = 22):
    """First satisfying assignment in lexicographic order, or None."""
    if phi.nvars > limit_bits:
        raise ValueError(f"{phi.nvars} variables is beyond the brute-force limit")
    for bits in itertools.product((False, True), repeat=phi.nvars):
        if evaluate(phi, bits):
            return list(bits)
    return None


def parse_dimacs(text: str) -> CnfFormula:
    nvars = ncl = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"line {ln}: expected 'p cnf <vars> <clauses>'")
            nvars, ncl = int(parts[2]), int(parts[3])
            continue
        if nvars is None:
            raise FormatError(f"line {ln}: clause before the p-line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"line {ln}: bad literal '{tok}'") from None
            if lit == 0:
                if not current:
                    raise FormatError(f"line {ln}: empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > nvars:
                    raise FormatError(f"line {ln}: literal {lit} out of range")
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if nvars is None:
        raise FormatError("missing p-line")
    if ncl is not None and len(clauses) != ncl:
        raise FormatError(f"header declares {ncl} clauses but found {len(clauses)}")
    return CnfFormula(nvars=nvars, clauses=tuple(clauses))


def to_dimacs(phi: CnfFormula, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"c {comment}")
    lines.append(f"p cnf {phi.nvars} {phi.nclauses}")
    for cl in phi.clauses:
        lines.append(" ".join(str(l) for l in cl) + " 0")
    return "\n".join(lines) + "\n"
