"""The equation prod a_j = prod (v - a_j) with 1 <= a_j < v.

Brute force runs over nondecreasing tuples.  Writing r(a) = a / (v - a),
which increases with a, a prefix can only be completed when the remaining
ratios, each at least r(last), can bring the running ratio back to 1.  The
final entry is solved for directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial, prod

from sympy import factorint, isprime, n_order

DEFAULT_BUDGET = 10**9


class ConsistencyError(RuntimeError):
    """A proven non-existence verdict disagrees with brute force."""


@dataclass
class UnimodResult:
    v: int
    k: int
    solutions: list[tuple[int, ...]] = field(default_factory=list)  # nondecreasing
    truncated: bool = False
    nodes: int = 0

    @property
    def count(self) -> int:
        return len(self.solutions)

    @property
    def ordered_count(self) -> int:
        total = 0
        for sol in self.solutions:
            mult = factorial(len(sol))
            for a in set(sol):
                mult //= factorial(sol.count(a))
            total += mult
        return total

    def expanded(self) -> list[tuple[int, ...]]:
        out = set()
        for sol in self.solutions:
            out.update(permutations(sol))
        return sorted(out)


def is_solution(v: int, sol) -> bool:
    return all(1 <= a < v for a in sol) and prod(sol) == prod(v - a for a in sol)


def solve_unimod(v: int, k: int, mode: str = "all", budget: int = DEFAULT_BUDGET) -> UnimodResult:
    """Enumerate solutions in nondecreasing order.

    mode "first" stops at the first solution; "all" and "count" collect every
    nondecreasing solution (UnimodResult.expanded gives all orderings).
    Exceeding `budget` search nodes sets `truncated`.
    """
    if v < 2 or k < 1:
        raise ValueError(f"need v >= 2 and k >= 1, got v={v}, k={k}")
    if mode not in ("first", "all", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    res = UnimodResult(v, k)
    prefix = []

    class _Stop(Exception):
        pass

    def rec(lo, num, den):
        # num / den = prod a / prod (v - a) over the prefix
        res.nodes += 1
        if res.nodes > budget:
            res.truncated = True
            raise _Stop
        m = k - len(prefix)
        if m == 1:
            # num * a == den * (v - a)
            top, bot = den * v, num + den
            if top % bot == 0:
                a = top // bot
                if lo <= a < v:
                    res.solutions.append(tuple(prefix) + (a,))
                    if mode == "first":
                        raise _Stop
            return
        for a in range(lo, v):
            # smallest achievable ratio uses a for every remaining slot
            if num * a**m > den * (v - a) ** m:
                break
            # largest achievable ratio uses v-1 for the rest
            if num * a * (v - 1) ** (m - 1) < den * (v - a):
                continue
            prefix.append(a)
            rec(a, num * a, den * (v - a))
            prefix.pop()

    try:
        rec(1, 1, 1)
    except _Stop:
        pass
    return res


def easy_solutions(v: int, k: int) -> tuple[int, ...] | None:
    """A solution from the pairing, halving or (b+1)(b^2+1) constructions."""
    if v < 2 or k < 1:
        return None

    def pairs(n):
        out = []
        for i in range(n):
            a = i % (v - 1) + 1
            out += [a, v - a]
        return out

    if k % 2 == 0:
        return tuple(pairs(k // 2))
    if v % 2 == 0:
        return (v // 2,) * k
    if k >= 3:
        b = 2
        while (b + 1) * (b * b + 1) <= v:
            base = (b + 1) * (b * b + 1)
            if v % base == 0:
                m = v // base
                core = [m * b * b * (b + 1), m * (b * b + 1), m * (b * b + 1)]
                return tuple(core + pairs((k - 3) // 2))
            b += 2
    return None


def prime_power(v: int) -> tuple[int, int] | None:
    """(q, n) with v = q^n for a prime q, else None."""
    if v < 2:
        return None
    f = factorint(v)
    if len(f) == 1:
        (q, n), = f.items()
        return q, n
    return None


def no_solution_prime_power(v: int, k: int) -> bool:
    pp = prime_power(v)
    return pp is not None and pp[0] % 2 == 1 and k % 2 == 1


def order2_mod(q: int) -> int:
    if q < 3 or not isprime(q):
        raise ValueError(f"q = {q} is not an odd prime")
    return int(n_order(2, q))


def three_q_power(v: int) -> tuple[int, int] | None:
    """(q, n) with v = 3 q^n, q an odd prime, else None."""
    if v % 3:
        return None
    return prime_power(v // 3) if v // 3 > 1 else None


def obstruction_3qn(v: int, k: int) -> bool:
    if k % 2 == 0:
        return False
    qn = three_q_power(v)
    if qn is None or qn[0] == 2:
        return False
    return order2_mod(qn[0]) % 4 == 2


def obstruction_reason(v: int, k: int) -> str | None:
    """Which proven obstruction rules out odd-k solutions, if any."""
    if no_solution_prime_power(v, k):
        q, n = prime_power(v)
        return f"v = {q}^{n} is an odd prime power and k is odd"
    if obstruction_3qn(v, k):
        q, n = three_q_power(v)
        why = f"v = 3*{q}^{n} and ord_{q}(2) = {order2_mod(q)} is 2 mod 4"
        if q % 8 == 3:
            why += f" ({q} is 3 mod 8)"
        return why
    return None


def exists_m_condition(q: int) -> int | None:
    """Smallest m in [0, 2 ord_q(2)) with 2^m = (-1)^(m+1) mod q."""
    order = order2_mod(q)
    for m in range(2 * order):
        if pow(2, m, q) == (-1) ** (m + 1) % q:
            return m
    return None


@dataclass
class Explained:
    result: UnimodResult
    predicted_none: str | None
    easy: tuple[int, ...] | None

    @property
    def label(self) -> str:
        if self.predicted_none:
            return "proven: no solutions"
        if self.result.count:
            return "solutions exist"
        return "empirical: none found" if not self.result.truncated else "truncated"


def solve_explained(v: int, k: int, mode: str = "all", budget: int = DEFAULT_BUDGET) -> Explained:
    """Brute force plus the proven predictions; disagreement raises ConsistencyError."""
    res = solve_unimod(v, k, mode, budget)
    reason = obstruction_reason(v, k)
    if reason and res.count:
        raise ConsistencyError(f"{reason}, yet {res.solutions[0]} solves v={v}, k={k}")
    easy = easy_solutions(v, k)
    if easy is not None and not is_solution(v, easy):
        raise ConsistencyError(f"constructed tuple {easy} is not a solution for v={v}")
    if easy is not None and not res.truncated and not res.count:
        raise ConsistencyError(f"brute force missed constructed solution {easy} for v={v}, k={k}")
    return Explained(res, reason, easy)
