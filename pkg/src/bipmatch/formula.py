"""1-in-3 SAT formulas: file format, occurrence-splitting transform, brute oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

ONE_IN_THREE_LIMIT = 24


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if not c:
                raise FormulaError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise FormulaError(f"literal {lit} out of range 1..{self.num_vars}")

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """variable -> [(clause index, position)] in reading order."""
        occ: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, self.num_vars + 1)}
        for j, c in enumerate(self.clauses):
            for k, lit in enumerate(c):
                occ[abs(lit)].append((j, k))
        return occ

    def well_formed_errors(self) -> list[str]:
        """Violations of the bounded-occurrence restriction used by the reduction."""
        errors = []
        pos, neg = Counter(), Counter()
        for j, c in enumerate(self.clauses):
            if len(c) not in (2, 3):
                errors.append(f"clause {j + 1} has {len(c)} literals")
            for lit in c:
                (pos if lit > 0 else neg)[abs(lit)] += 1
        for v in range(1, self.num_vars + 1):
            if pos[v] + neg[v] > 3:
                errors.append(f"variable {v} occurs {pos[v] + neg[v]} times")
            if pos[v] > 2:
                errors.append(f"literal {v} occurs {pos[v]} times")
            if neg[v] > 1:
                errors.append(f"literal -{v} occurs {neg[v]} times")
        return errors

    def is_well_formed(self) -> bool:
        return not self.well_formed_errors()


def parse_formula(text: str) -> Formula:
    """``p x13 <nvars> <nclauses>`` then one 0-terminated clause per line."""
    header = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if header is not None or len(tokens) != 4 or tokens[1] != "x13":
                raise FormulaError(f"line {lineno}: bad header")
            header = (int(tokens[2]), int(tokens[3]))
            continue
        if header is None:
            raise FormulaError(f"line {lineno}: clause before header")
        try:
            lits = [int(t) for t in tokens]
        except ValueError:
            raise FormulaError(f"line {lineno}: non-integer literal") from None
        if lits[-1] != 0 or 0 in lits[:-1]:
            raise FormulaError(f"line {lineno}: clause must end with a single 0")
        clauses.append(tuple(lits[:-1]))
    if header is None:
        raise FormulaError("missing 'p x13' header")
    if header[1] != len(clauses):
        raise FormulaError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return Formula(header[0], tuple(clauses))


def format_formula(f: Formula) -> str:
    lines = [f"p x13 {f.num_vars} {len(f.clauses)}"]
    lines.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


def transform_formula(f: Formula) -> Formula:
    """Split every variable with k >= 3 occurrences into k copies.

    The j-th occurrence gets copy x^j, and the 2-clauses (x^j, -x^{j+1})
    plus (x^k, -x^1) tie the copies together: exactly-one-true on such a
    clause means x^j = x^{j+1}. Other variables are only renumbered.
    """
    if any(lit < 0 for c in f.clauses for lit in c):
        raise FormulaError("transform expects a formula without negative literals")
    occ = f.occurrences()
    new_lit: dict[tuple[int, int], int] = {}
    binding: list[tuple[int, int]] = []
    next_id = 1
    for v in range(1, f.num_vars + 1):
        places = occ[v]
        if len(places) >= 3:
            copies = list(range(next_id, next_id + len(places)))
            next_id += len(places)
            for place, x in zip(places, copies):
                new_lit[place] = x
            k = len(copies)
            binding.extend((copies[j], -copies[(j + 1) % k]) for j in range(k))
        else:
            for place in places:
                new_lit[place] = next_id
            next_id += 1
    clauses = [tuple(new_lit[(j, k)] for k in range(len(c))) for j, c in enumerate(f.clauses)]
    return Formula(next_id - 1, tuple(clauses + binding))


def brute_one_in_three(f: Formula) -> bool:
    """Exhaustive check for an assignment with exactly one true literal per clause."""
    n = f.num_vars
    if n > ONE_IN_THREE_LIMIT:
        raise FormulaError(f"brute force limited to {ONE_IN_THREE_LIMIT} variables, got {n}")
    if not f.clauses:
        return True
    chunk = 1 << min(n, 20)
    for start in range(0, 1 << n, chunk):
        codes = np.arange(start, start + chunk, dtype=np.int64)
        ok = np.ones(chunk, dtype=bool)
        for c in f.clauses:
            true_count = np.zeros(chunk, dtype=np.int8)
            for lit in c:
                bit = ((codes >> (abs(lit) - 1)) & 1).astype(np.int8)
                true_count += bit if lit > 0 else 1 - bit
            ok &= true_count == 1
            if not ok.any():
                break
        if ok.any():
            return True
    return False
