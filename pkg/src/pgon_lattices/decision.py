"""Lattice existence verdicts, witnesses, and the end-to-end complex verifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from sympy import isprime

from .builders import ConstructionError, build_any, f_of
from .complexes import (ComplexOfGroups, build_even_v, build_from_certificate,
                        check_link_Kvv, is_faithful, local_link)
from .config import SearchConfig
from .diophantine import ConsistencyError, obstruction_3qn, prime_power, three_q_power, order2_mod
from .homology import (CoefficientCertificate, SearchTruncated, certificate_from_weights,
                       find_coeffs_in, find_nonzero_coeffs, find_sign_coeffs)
from .indexing import (IndexingError, has_parallel_transport, induced_indexing, is_unimodular,
                       is_v_thick)
from .surface import TiledSurface, validate

EXISTS, NOT_EXISTS, UNKNOWN = "Exists", "NotExists", "Unknown"
EXIT_CODES = {EXISTS: 0, NOT_EXISTS: 1, UNKNOWN: 2}


@dataclass
class Verdict:
    outcome: str
    reason: str
    notes: list[str] = field(default_factory=list)
    fired: list[tuple[str, str]] = field(default_factory=list)  # every (tag, outcome) that applied
    data: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "reason": self.reason, "notes": list(self.notes),
                "fired": [list(x) for x in self.fired], "data": dict(self.data)}


def _even_b(v: int, exponents, bound: int) -> int | None:
    for b in range(2, bound + 1, 2):
        if all(v % (b**c + 1) == 0 for c in exponents):
            return b
    return None


def _is_composite(n: int) -> bool:
    return n > 3 and not isprime(n)


def decide(p: int, v: int, g: int, config: SearchConfig = SearchConfig()) -> Verdict:
    """Apply every existence and non-existence clause; the first that fires wins.

    All clauses are evaluated so that an Exists clause and a NotExists
    clause firing together raises ConsistencyError.
    """
    if p < 5 or v < 2 or g < 2:
        raise ValueError(f"need p >= 5, v >= 2, g >= 2 (got p={p}, v={v}, g={g})")
    F = f_of(p, g)
    if F is None:
        return Verdict(NOT_EXISTS, "no-tiling", [f"8(g-1)/(p-4) = {8 * (g - 1)}/{p - 4} is not an integer"],
                       [("no-tiling", NOT_EXISTS)], {"F": None})
    fired = []
    notes = []
    data = {"F": F}
    if v % 2 == 0:
        fired.append(("existence-a:v-even", EXISTS))
    if F % 4 == 0:
        fired.append(("existence-b:F-div4", EXISTS))
    pp = prime_power(v)
    if F % 2 == 1 and pp and pp[0] % 2 == 1:
        fired.append(("nonexistence-a:odd-prime-power", NOT_EXISTS))
        notes.append(f"v = {pp[0]}^{pp[1]}")
    if F % 2 == 1 and obstruction_3qn(v, 1):
        q, n = three_q_power(v)
        fired.append(("nonexistence-b:3q^n-order2", NOT_EXISTS))
        notes.append(f"v = 3*{q}^{n}, ord_{q}(2) = {order2_mod(q)}"
                     + (f", {q} = 3 mod 8" if q % 8 == 3 else ""))
    if v == 3 and F % 4:
        fired.append(("nonexistence-v3:F-not-div4", NOT_EXISTS))
    if _is_composite(F) and v % 2:
        b = _even_b(v, (1, 2), config.even_b_bound)
        if b is not None:
            fired.append(("existence-c:F-composite", EXISTS))
            data["b"] = b
    outcomes = {o for _, o in fired}
    if EXISTS in outcomes and NOT_EXISTS in outcomes:
        raise ConsistencyError(f"clauses disagree for (p={p}, v={v}, g={g}): {fired}")
    if not fired:
        if F % 4 and v % 2:
            notes.append(f"open: F = {F} not divisible by 4, v = {v} odd")
        if _is_composite(F) and v % 2:
            notes.append(f"no even b <= {config.even_b_bound} with (b+1)(b^2+1) | {v}")
        return Verdict(UNKNOWN, "open", notes, fired, data)
    return Verdict(fired[0][1], fired[0][0], notes, fired, data)


@lru_cache(maxsize=None)
def _tiling_for(p: int, F: int, want_weights: bool):
    bt = build_any(p, F)
    if want_weights and not bt.has_certificate:
        raise ConstructionError(f"the tiling for p={p}, F={F} carries no weight certificate")
    return bt


@dataclass
class Witness:
    surface: TiledSurface
    cog: ComplexOfGroups
    certificate: CoefficientCertificate | None = None
    b: int | None = None


def witness_for(verdict: Verdict, p: int, v: int) -> Witness:
    """Construct the complex behind an Exists verdict from `decide`."""
    if verdict.outcome != EXISTS:
        raise ValueError("only Exists verdicts have witnesses")
    F = verdict.data["F"]
    tag = verdict.reason
    if tag.startswith("existence-a"):
        bt = _tiling_for(p, F, False)
        return Witness(bt.surface, build_even_v(bt.surface, v))
    if tag.startswith("existence-b"):
        bt = _tiling_for(p, F, False)
        b = v - 1
    else:
        bt = _tiling_for(p, F, True)
        b = verdict.data["b"]
    cert = certificate_from_weights(bt.surface, bt.weights)
    return Witness(bt.surface, build_from_certificate(bt.surface, cert, b, v), cert, b)


def decide_over_tiling(ts: TiledSurface, v: int, config: SearchConfig = SearchConfig(),
                       want_witness: bool = False):
    """Verdict for one given tiling; returns (verdict, witness or None)."""
    validate(ts).raise_first()
    if v < 2:
        raise ValueError("v must be >= 2")
    if v % 2 == 0:
        verdict = Verdict(EXISTS, "existence-a:v-even", fired=[("existence-a:v-even", EXISTS)])
        return verdict, (Witness(ts, build_even_v(ts, v)) if want_witness else None)
    notes = []
    signs = find_sign_coeffs(ts, bound=config.sign_bound)
    truncated = isinstance(signs, SearchTruncated)
    if truncated:
        notes.append(_truncation_note("sign", signs))
    elif signs is not None:
        b = v - 1
        verdict = Verdict(EXISTS, "strong-homology:signs", notes, [("strong-homology:signs", EXISTS)],
                          {"b": b, "coefficients": list(signs.coefficients)})
        return verdict, (_certified(ts, signs, b, v) if want_witness else None)
    if find_nonzero_coeffs(ts, small_search_bound=config.small_search_bound) is None:
        tag = "weak-homology:no-nonzero-coefficients"
        verdict = Verdict(NOT_EXISTS, tag, notes, [(tag, NOT_EXISTS)])
        if v == 3 and signs is None:
            verdict.fired.append(("strong-homology:v3-signs-exhausted", NOT_EXISTS))
        return verdict, None
    if v == 3 and signs is None:
        tag = "strong-homology:v3-signs-exhausted"
        return Verdict(NOT_EXISTS, tag, notes, [(tag, NOT_EXISTS)]), None
    # for each even b, coefficients c with b^c + 1 | v
    tried = {}
    for b in range(2, config.even_b_bound + 1, 2):
        exps = tuple(c for c in range(1, v.bit_length() + 1) if b**c + 1 <= v and v % (b**c + 1) == 0)
        if not exps or exps in tried:
            continue
        values = exps + tuple(-c for c in exps)
        cert = find_coeffs_in(ts, values, bound=config.sign_bound)
        tried[exps] = cert
        if isinstance(cert, SearchTruncated):
            truncated = True
            notes.append(_truncation_note(f"exponents {list(exps)}", cert))
        elif cert is not None:
            tag = "weak-homology:divisible"
            verdict = Verdict(EXISTS, tag, notes, [(tag, EXISTS)],
                              {"b": b, "coefficients": list(cert.coefficients)})
            return verdict, (_certified(ts, cert, b, v) if want_witness else None)
    notes.append(f"no certificate with b^c + 1 | {v} for even b <= {config.even_b_bound}")
    return Verdict(UNKNOWN, "search-truncated" if truncated else "open", notes, []), None


def _truncation_note(what, t: SearchTruncated) -> str:
    return f"{what} search truncated: {t.free} free coordinates over {t.n_geodesics} geodesics exceed 2^{t.bound}"


def _certified(ts, cert, b, v):
    return Witness(ts, build_from_certificate(ts, cert, b, v), cert.normalised(ts), b)


@dataclass
class CogReport:
    v: int
    vertices: list[dict]
    commutativity: list
    injectivity: list
    thick: bool
    parallel: bool
    unimodular: bool
    faithful: bool
    indexing_error: str | None = None

    @property
    def ok(self) -> bool:
        return (all(x["graph"] and x["algebraic"] for x in self.vertices) and not self.commutativity
                and not self.injectivity and self.thick and self.parallel and self.unimodular)

    @property
    def routes_agree(self) -> bool:
        return all(x["graph"] == x["algebraic"] for x in self.vertices)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "v": self.v, "routes_agree": self.routes_agree,
                "vertices": self.vertices, "commutativity_failures": [list(x) for x in self.commutativity],
                "injectivity_failures": [list(x) for x in self.injectivity],
                "indexing": {"v_thick": self.thick, "parallel_transport": self.parallel,
                             "unimodular": self.unimodular, "error": self.indexing_error},
                "faithful": self.faithful if self.faithful else "unknown"}


def verify_cog(cog: ComplexOfGroups, v: int) -> CogReport:
    """Vertex links by both routes, diagram commutativity, and the induced indexing laws."""
    ts = cog.ts
    vertices = []
    for s in range(ts.n_vertices):
        graph = local_link(cog, s).is_complete_bipartite(v)
        alg = check_link_Kvv(cog, s, v)
        vertices.append({"vertex": s, "graph": graph, "algebraic": alg.ok,
                         "indices": list(alg.indices)})
    comm = cog.commutativity_failures()
    inj = cog.injectivity_failures()
    thick = parallel = uni = False
    err = None
    try:
        ind = induced_indexing(cog)
        thick = is_v_thick(ind, ts, v)[0]
        parallel = has_parallel_transport(ind, ts)[0]
        uni = is_unimodular(ind, ts)[0]
    except IndexingError as exc:
        err = str(exc)
    return CogReport(v, vertices, comm, inj, thick, parallel, uni, is_faithful(cog), err)
