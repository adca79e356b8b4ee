"""Distance search, weight and shadow enumerators, and code-size bounds."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from math import comb
from typing import List, Optional

from . import gf2
from .pauli import PauliOperator, popcount
from .stabilizer import StabilizerCode, normalizer_basis


class CostError(RuntimeError):
    """The requested exhaustive search is too large."""


# -- distance -----------------------------------------------------------------

@dataclass
class DistanceReport:
    distance: int                 # exact distance, or cap + 1 as a lower bound
    exact: bool
    degenerate: Optional[bool]    # None when the cap hides the answer
    witness: Optional[PauliOperator]
    degeneracy_witness: Optional[PauliOperator]
    cap: int
    checked: int                  # number of Paulis examined


def search_cost(n, cap):
    return sum(3 ** w * comb(n, w) for w in range(1, cap + 1))


def _single_qubit_table(code):
    """(syndrome, packed symplectic) for X, Z, Y on every qubit."""
    n = code.n
    table = []
    for q in range(n):
        row = []
        for kind in "XZY":
            p = PauliOperator.single(n, q, kind)
            s = sum(((popcount(g.x & p.z) + popcount(g.z & p.x)) & 1) << i
                    for i, g in enumerate(code.generators))
            row.append((s, p.symplectic))
        table.append(row)
    return table


def distance(code: StabilizerCode, cap: Optional[int] = None,
             max_cost: float = 2e7) -> DistanceReport:
    """Smallest weight of an element of N(S) - S, by increasing-weight search.

    For k = 0 the distance is the smallest weight of a non-identity element
    of S.  Elements of S lighter than the distance mark the code degenerate.
    """
    n = code.n
    cap = n if cap is None else min(cap, n)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    budget = 0
    table = _single_qubit_table(code)
    elim = gf2.Eliminator()
    for g in code.generators:
        elim.add(g.symplectic)
    stab_witness = None
    checked = 0
    for w in range(1, cap + 1):
        budget += 3 ** w * comb(n, w)
        if budget > max_cost:
            raise CostError(f"distance search to weight {w} on {n} qubits needs "
                            f"~{budget:.3g} checks (limit {max_cost:.3g}); "
                            f"use a smaller cap")
        for support in itertools.combinations(range(n), w):
            cols = [table[q] for q in support]
            for choice in itertools.product(*cols):
                checked += 1
                s = 0
                for syn, _ in choice:
                    s ^= syn
                if s:
                    continue
                v = 0
                for _, pk in choice:
                    v |= pk
                p = PauliOperator.from_symplectic(n, v)
                if code.k > 0 and elim.contains(v):
                    if stab_witness is None:
                        stab_witness = p
                    continue
                deg = stab_witness is not None if code.k > 0 else False
                return DistanceReport(w, True, deg, p, stab_witness, cap, checked)
    deg = True if stab_witness is not None else None
    return DistanceReport(cap + 1, False, deg, None, stab_witness, cap, checked)


# -- enumerators ------------------------------------------------------------------

def _weights_of_span(rows, n, offset=0):
    """Weight histogram of offset + span(rows) for packed symplectic vectors."""
    mask = (1 << n) - 1
    counts = [0] * (n + 1)
    for v in gf2.span_elements(gf2.basis(rows)):
        v ^= offset
        counts[popcount((v & mask) | (v >> n))] += 1
    return counts


def _guard(dim, max_dim):
    if dim > max_dim:
        raise CostError(f"enumerating 2^{dim} elements exceeds the limit 2^{max_dim}")


def stabilizer_enumerator(code, max_dim=24) -> List[int]:
    """A_d: number of elements of S of weight d."""
    _guard(len(code.generators), max_dim)
    return _weights_of_span(code.rows(), code.n)


def normalizer_enumerator(code, max_dim=24) -> List[int]:
    """B_d: number of elements of N(S) (up to phase) of weight d."""
    basis = normalizer_basis(code)
    _guard(len(basis), max_dim)
    return _weights_of_span(basis, code.n)


def weight_enumerators(code, max_dim=24):
    _guard(code.n + code.k, max_dim)      # dim N(S) >= dim S: fail before any work
    return stabilizer_enumerator(code, max_dim), normalizer_enumerator(code, max_dim)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_pow(a, e):
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def _transform(A, n, k, lo, hi):
    """2^(k-n) * sum_d A_d * lo(z)^d * hi(z)^(n-d), exact."""
    total = [0] * (n + 1)
    for d, a in enumerate(A):
        if not a:
            continue
        term = _poly_mul(_poly_pow(lo, d), _poly_pow(hi, n - d))
        for j, c in enumerate(term):
            total[j] += a * c
    den = 2 ** (n - k)
    out = []
    for c in total:
        if c % den:
            raise ArithmeticError("transform gave a non-integer coefficient; A is invalid")
        out.append(c // den)
    return out


def macwilliams_transform(A, n, k) -> List[int]:
    """B from A via B(z) = 2^(k-n) A evaluated with w -> 1+3z, z -> 1-z."""
    if len(A) != n + 1:
        raise ValueError("A must have n+1 coefficients")
    return _transform(A, n, k, [1, -1], [1, 3])


def shadow_transform(A, n, k) -> List[int]:
    """Shadow enumerator S(z) = 2^(k-n) (1+3z)^n A((z-1)/(1+3z))."""
    if len(A) != n + 1:
        raise ValueError("A must have n+1 coefficients")
    return _transform(A, n, k, [-1, 1], [1, 3])


def shadow_enumerator(code, max_dim=24) -> List[int]:
    """Weights of the Paulis E with f_M(E) = wt(M) mod 2 for every M in S.

    The weight parity is additive on a commuting group, so the set is a
    coset e0 + N(S) with e0 solving the conditions on the generators.
    """
    n = code.n
    basis = normalizer_basis(code)
    _guard(len(basis), max_dim)
    # solve sp(e0, g_i) = wt(g_i) mod 2: rows are swapped generators
    rows = [gf2.swap_halves(g.symplectic, n) for g in code.generators]
    target = [g.weight() & 1 for g in code.generators]
    e0 = _solve_affine(rows, target, 2 * n)
    return _weights_of_span(basis, n, offset=e0)


def _solve_affine(rows, target, ncols):
    """Some v with popcount(rows[i] & v) % 2 == target[i] for all i."""
    aug = [r | (t << ncols) for r, t in zip(rows, target)]
    red, piv = gf2.rref(aug, ncols + 1)
    v = 0
    for r, p in zip(red, piv):
        if p == ncols:
            raise ArithmeticError("inconsistent system")
        if (r >> ncols) & 1:
            v |= 1 << p
    return v


# -- bounds ---------------------------------------------------------------------------

@dataclass
class BoundEvaluation:
    name: str
    n: int
    k: int
    param: int
    satisfied: bool
    equality: bool
    margin: int


def hamming_bound(n, k, t) -> BoundEvaluation:
    """Nondegenerate sphere packing: sum_{j<=t} 3^j C(n,j) 2^k <= 2^n."""
    lhs = sum(3 ** j * comb(n, j) for j in range(t + 1)) * 2 ** k
    return BoundEvaluation("hamming", n, k, t, lhs <= 2 ** n, lhs == 2 ** n, 2 ** n - lhs)


def kl_bound(n, k, d) -> BoundEvaluation:
    """Singleton-type bound n - k >= 2(d - 1)."""
    need = 2 * (d - 1) + k
    return BoundEvaluation("knill-laflamme", n, k, d, n >= need, n == need, n - need)


def gv_bound(n, k, d) -> BoundEvaluation:
    """Greedy-construction inequality sum_{j<=d-1} 3^j C(n,j) 2^k >= 2^n.

    The greedy argument keeps adding codewords while the left side is below
    2^n, so it always reaches a k for which this holds.  ``margin`` is
    lhs - 2^n.
    """
    lhs = sum(3 ** j * comb(n, j) for j in range(d)) * 2 ** k
    return BoundEvaluation("gilbert-varshamov", n, k, d, lhs >= 2 ** n, lhs == 2 ** n,
                           lhs - 2 ** n)


def gv_guaranteed_k(n, d):
    """Largest k the greedy argument guarantees: 2^k * V < 2^n * 2, V the ball volume."""
    vol = sum(3 ** j * comb(n, j) for j in range(d))
    k = 0
    while (2 ** (k + 1)) * vol <= 2 ** n:
        k += 1
    return k if vol <= 2 ** n else None


def binary_entropy(p):
    if not 0 <= p <= 1:
        raise ValueError("entropy argument must lie in [0, 1]")
    if p in (0, 1):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def asymptotic_rates(p):
    """Rate curves k/n against error fraction p (clipped below at 0)."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    l3 = math.log2(3)
    x = 2 * p - 4 * p * p / 3
    out = {
        "hamming": 1 - p * l3 - binary_entropy(p),
        "kl": 1 - 4 * p,
        "gv": 1 - 2 * p * l3 - binary_entropy(2 * p) if 2 * p <= 1 else -math.inf,
        "deg_stab": 1 - (x / 2) * l3 - binary_entropy(min(max(x, 0.0), 1.0)) / 2,
        "erasure_1epp": 1 - 2 * p,
        "erasure_2epp": 1 - p,
    }
    return {key: max(v, 0.0) for key, v in out.items()}


# -- CSV --------------------------------------------------------------------------------

def enumerators_csv(A, B, S=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "A_d", "B_d", "S_d"])
    for d in range(len(A)):
        w.writerow([d, A[d], B[d], "" if S is None else S[d]])
    return buf.getvalue()


RATE_NAMES = ("hamming", "kl", "gv", "deg_stab", "erasure_1epp", "erasure_2epp")


def rates_csv(ps) -> str:
    """One row per p with every asymptotic rate curve as a column."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", *RATE_NAMES])
    for p in ps:
        r = asymptotic_rates(p)
        w.writerow([f"{p:.6g}"] + [f"{r[name]:.12g}" for name in RATE_NAMES])
    return buf.getvalue()
