"""Error-rate recursions for concatenated seven-qubit codes and threshold solvers.

Level j rates follow from level j-1 by

    p^(j) = 21 [ (p^(j-1))^2 + 4 p^(j-1) p_EC + 8 p_EC^2 ]

(21 = pairs of the 7 qubits; the bracket counts gate/gate, gate/syndrome
and syndrome/syndrome failure pairs), with the per-qubit error-correction
failure p_EC = 12 p_g + (14 + t_prep + t_meas) p_stor, t_prep^(j) = 43 j,
t_meas = 1.  Every expanded coefficient is derived from this template
(symbolically with sympy where integers are wanted), never typed in.
Residual errors left over from earlier correction rounds are ignored.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

import sympy as sp

PAIRS = 21                      # C(7, 2)
SQRT8 = math.sqrt(8)
PREP_STEP = 43                  # t_prep^(j) = t_prep^(j-1) + 43


class ThresholdConfigError(ValueError):
    """Bisection interval does not bracket a threshold."""


@dataclass(frozen=True)
class ErrorModelParams:
    p_g: float = 0.0            # N(G) gate error rate (level 0)
    p_stor: float = 0.0         # storage error per time step (level 0)
    p_tof: float = 0.0          # Toffoli gate error (level 0)
    p_cat: float = 0.0          # residual cat-state error
    t_cat: Optional[float] = None   # cat build time; default t_prep + 1
    t_meas: float = 1.0
    t_tof: float = 1.0          # level-0 Toffoli duration
    just_in_time: bool = False      # ancillas ready exactly when needed
    storage_free: bool = False      # no correction after idle steps: p_stor = 0 throughout
    optimized_n: bool = False       # correct every N ~ sqrt(8) p_EC / p steps

    def __post_init__(self):
        for name in ("p_g", "p_stor", "p_tof", "p_cat"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1]")
        for name in ("t_meas", "t_tof"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class LevelState:
    j: int
    pg: float
    ps: float
    ptof: float
    t_prep: float
    t_tof: float
    n_steps: Optional[float] = None     # optimized N used to reach this level


def initial_level(params: ErrorModelParams) -> LevelState:
    ps = 0.0 if params.storage_free else params.p_stor
    return LevelState(0, params.p_g, ps, params.p_tof, 0.0, params.t_tof)


# -- one level up ------------------------------------------------------------------------

def p_ec(level: LevelState, params: ErrorModelParams) -> float:
    """Chance of an error on one data qubit during one syndrome measurement."""
    if params.just_in_time:
        return 12 * level.pg + 9 * level.ps
    return 12 * level.pg + (14 + level.t_prep + params.t_meas) * level.ps


def pair_recursion(p, pec):
    return PAIRS * (p * p + 4 * p * pec + 8 * pec * pec)


def optimal_steps(pec, p):
    """N = sqrt(8) p_EC / p minimizes the per-step rate of the N-step recursion."""
    if p <= 0:
        raise ValueError("need p > 0")
    return SQRT8 * pec / p


def recurse_optimized(p, pec):
    """Per-step rate after correcting every optimal N steps: (21/N)(16 + 8 sqrt 2) p_EC^2."""
    if p <= 0:
        return 0.0
    n = optimal_steps(pec, p)
    return PAIRS / n * (16 + 8 * math.sqrt(2)) * pec * pec


def recurse_gate(level, params):
    pec = p_ec(level, params)
    if params.optimized_n:
        return recurse_optimized(level.pg, pec)
    return pair_recursion(level.pg, pec)


def recurse_storage(level, params):
    if params.storage_free:
        return 0.0
    pec = p_ec(level, params)
    if params.optimized_n:
        return recurse_optimized(level.ps, pec)
    return pair_recursion(level.ps, pec)


# -- Toffoli ledger --------------------------------------------------------------------------

@dataclass
class Accumulation:
    """Linear form: (a t_cat + b t_meas + c t_tof + d) p_stor + e p_cat + f p_g + g p_tof."""
    t_cat: int = 0
    t_meas: int = 0
    t_tof: int = 0
    const: int = 0
    p_cat: int = 0
    p_g: int = 0
    p_tof: int = 0

    def __add__(self, other):
        return Accumulation(*[x + y for x, y in zip(self.astuple(), other.astuple())])

    def astuple(self):
        return (self.t_cat, self.t_meas, self.t_tof, self.const, self.p_cat, self.p_g, self.p_tof)

    def value(self, level: LevelState, params: ErrorModelParams, t_cat):
        time = self.t_cat * t_cat + self.t_meas * params.t_meas + self.t_tof * level.t_tof + self.const
        return (time * level.ps + self.p_cat * params.p_cat + self.p_g * level.pg
                + self.p_tof * level.ptof)


def _gate(k=1):
    return Accumulation(p_g=k)


def toffoli_ledger_stages():
    """Accumulated error forms (A1, A2, A3) on the three ancilla blocks, stage by stage.

    The first stage (ancilla |A> built and verified against three cat
    states) is the starting accumulation.  Later stages follow rules:
    data CNOTs add the data's storage over the construction time plus one
    gate; measurement adds t_meas + 1 storage; each conditional two-block
    operation copies one block's accumulated error into the other and adds
    a gate error.  The result for A3 after the second conditional
    operation has storage constant 41 by this rule.
    """
    stages = []
    a12 = Accumulation(t_cat=1, t_meas=1, const=7, p_cat=3, p_g=7, p_tof=3)
    a3 = Accumulation(t_cat=1, t_meas=1, t_tof=3, const=3, p_cat=3, p_g=5)
    a1, a2 = a12, a12
    stages.append(("ancilla prepared", a1, a2, a3))
    data_wait = Accumulation(t_cat=1, t_meas=1, t_tof=3, const=7)   # construction time
    a1, a2, a3 = a1 + data_wait + _gate(), a2 + data_wait + _gate(), a3 + data_wait + _gate()
    stages.append(("data CNOTs", a1, a2, a3))
    meas = Accumulation(t_meas=1, const=1)
    a1, a2, a3 = a1 + meas, a2 + meas, a3 + meas
    stages.append(("data measured", a1, a2, a3))
    a1, a2, a3 = a1 + a2 + _gate(), a1 + a2 + _gate(), a3 + _gate()
    stages.append(("conditional op on blocks 1,2", a1, a2, a3))
    a1, a2, a3 = a1 + a3 + _gate(), a2 + _gate(), a1 + a3 + _gate()
    stages.append(("conditional op on blocks 1,3", a1, a2, a3))
    a1, a2, a3 = a1 + _gate(), a3 + _gate(2), a3 + _gate(2)
    stages.append(("conditional op on blocks 2,3", a1, a2, a3))
    return stages


def toffoli_final_accumulation() -> Accumulation:
    _, a1, a2, a3 = toffoli_ledger_stages()[-1]
    return max((a1, a2, a3), key=lambda a: a.astuple())


@dataclass
class ToffoliStep:
    a1: float
    a2: float
    a3: float
    ptof_next: float
    t_tof_next: float


def toffoli_ledger(level: LevelState, params: ErrorModelParams) -> ToffoliStep:
    t_cat = params.t_cat if params.t_cat is not None else level.t_prep + 1
    _, a1, a2, a3 = toffoli_ledger_stages()[-1]
    vals = [a.value(level, params, t_cat) for a in (a1, a2, a3)]
    sigma = max(vals)
    pec = p_ec(level, params)
    t_next = t_cat + 2 * params.t_meas + 3 * level.t_tof + 12
    return ToffoliStep(*vals, pair_recursion(sigma, pec), t_next)


def next_level(level: LevelState, params: ErrorModelParams) -> LevelState:
    pec = p_ec(level, params)
    n_steps = optimal_steps(pec, level.pg) if params.optimized_n and level.pg > 0 else None
    tof = toffoli_ledger(level, params)
    return LevelState(level.j + 1, recurse_gate(level, params), recurse_storage(level, params),
                      tof.ptof_next, level.t_prep + PREP_STEP, tof.t_tof_next, n_steps)


def levels(params: ErrorModelParams, count=6) -> List[LevelState]:
    out = [initial_level(params)]
    for _ in range(count):
        out.append(next_level(out[-1], params))
    return out


def level_table_csv(states: List[LevelState]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "pg", "ps", "pTof", "t_prep", "t_Tof"])
    for s in states:
        w.writerow([s.j, f"{s.pg:.6e}", f"{s.ps:.6e}", f"{s.ptof:.6e}", f"{s.t_prep:g}",
                    f"{s.t_tof:g}"])
    return buf.getvalue()


# -- thresholds ---------------------------------------------------------------------------------

MODES = {
    # name: (level-0 parameters as a function of p0, rates that must converge)
    "gates_only": (lambda p: ErrorModelParams(p_g=p, storage_free=True), ("pg",)),
    "storage_only": (lambda p: ErrorModelParams(p_g=p, p_stor=p), ("pg", "ps")),
    "just_in_time_gates": (lambda p: ErrorModelParams(p_g=p, just_in_time=True), ("pg", "ps")),
    "just_in_time_equal": (lambda p: ErrorModelParams(p_g=p, p_stor=p, just_in_time=True),
                           ("pg", "ps")),
    "optimized_N": (lambda p: ErrorModelParams(p_g=p, storage_free=True, optimized_n=True),
                    ("pg",)),
    "toffoli": (lambda p: ErrorModelParams(p_tof=p, storage_free=True), ("ptof",)),
    "toffoli_joint": (lambda p: ErrorModelParams(p_g=p, p_tof=p, storage_free=True),
                      ("pg", "ptof")),
}

MODE_NOTES = {
    "gates_only": "N(G) gates only, no storage errors",
    "storage_only": "equal gate and storage rates, correction after every step",
    "just_in_time_gates": "ancillas prepared just in time, storage rate 0 at level 0",
    "just_in_time_equal": "ancillas prepared just in time, equal rates",
    "optimized_N": "no storage errors, correction every optimal N steps",
    "toffoli": "Toffoli rate with vanishing N(G) gate rate",
    "toffoli_joint": "equal Toffoli and N(G) gate rates, no storage errors",
}


def _converges(params: ErrorModelParams, tracked=("pg", "ps"), n_levels=20):
    """False if a tracked rate exceeds 0.5 within n_levels, True otherwise
    (early exit once every tracked rate is below 1e-30)."""
    lv = initial_level(params)
    for _ in range(n_levels):
        lv = next_level(lv, params)
        rates = [getattr(lv, name) for name in tracked]
        worst = max(rates)
        if worst > 0.5 or math.isnan(worst):
            return False
        if worst < 1e-30:
            return True
    return True


def solve_threshold(mode: str, lo=0.0, hi=0.1, iterations=60, n_levels=20, params=None) -> float:
    """Largest level-0 rate whose recursion stays below 0.5 for n_levels levels.

    Bisection over (lo, hi) with a fixed number of halvings.
    """
    if mode not in MODES:
        raise ThresholdConfigError(f"unknown mode {mode!r}; choose from {sorted(MODES)}")
    build, tracked = MODES[mode]
    if params is not None:
        base = build
        build = lambda p: replace(base(p), **params)
    if _converges(build(hi), tracked, n_levels):
        raise ThresholdConfigError(f"recursion still converges at p = {hi}")
    small = lo if lo > 0 else hi * 1e-12
    if not _converges(build(small), tracked, n_levels):
        raise ThresholdConfigError(f"recursion diverges already at p = {small}")
    a, b = small, hi
    for _ in range(iterations):
        mid = 0.5 * (a + b)
        if _converges(build(mid), tracked, n_levels):
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


# -- closed-form pieces ---------------------------------------------------------------------

def optimized_coefficient():
    """c in p^(j) = c (p^(j-1))^2 with optimal N and p_EC = 12 p (no storage)."""
    n = optimal_steps(12.0, 1.0)
    return n, PAIRS / n * (16 + 8 * math.sqrt(2)) * 144


def toffoli_epsilon_coefficients(levels_=3):
    """Coefficients c_j of pTof^(j) = c_j eps^(2^j) when pTof^(0) = p_g^(0) = eps p_thresh.

    Uses pTof' = a p_g^2 + b p_g pTof + c pTof^2 with p_g^(j) = p_thresh eps^(2^j)
    (no storage errors); a, b, c come from the symbolic expansion.
    """
    coeff = toffoli_storage_free_coefficients()
    a, b, c = (float(coeff[k]) for k in ("pg^2", "pg*ptof", "ptof^2"))
    pth = 1.0 / float(gate_only_coefficient())
    out = [pth]               # pTof^(0) = pth * eps
    for j in range(levels_):
        cj = out[-1]
        # pg^(j) = pth eps^(2^j), pTof^(j) = cj eps^(2^j); every term scales as eps^(2^(j+1))
        out.append(a * pth * pth + b * pth * cj + c * cj * cj)
    return out


def toffoli_stationary_epsilon():
    """eps at which pTof^(3) = pTof^(2): c_2 eps^4 = c_3 eps^8."""
    c = toffoli_epsilon_coefficients(3)
    return (c[2] / c[3]) ** 0.25


# -- symbolic coefficients ---------------------------------------------------------------

_pg, _ps, _pt, _j = sp.symbols("p_g p_s p_tof j")


def _pec_symbolic(just_in_time=False, storage_free=False):
    ps = 0 if storage_free else _ps
    if just_in_time:
        return 12 * _pg + 9 * ps
    return 12 * _pg + (15 + PREP_STEP * (_j - 1)) * ps


def expanded_recursion(which="gate", just_in_time=False, storage_free=False):
    """Expanded p^(j) as a polynomial in p_g, p_s (level j-1) with j symbolic."""
    pec = _pec_symbolic(just_in_time, storage_free)
    p = _pg if which == "gate" else _ps
    return sp.expand(PAIRS * (p ** 2 + 4 * p * pec + 8 * pec ** 2))


def _coeffs(expr, shift=True):
    poly = sp.Poly(expr, _pg, _ps)
    names = {(2, 0): "pg^2", (1, 1): "pg*ps", (0, 2): "ps^2"}
    out = {}
    for mon, c in poly.terms():
        c = sp.expand(c.subs(_j, _j)) if shift else c
        out[names[mon]] = sp.expand(c)
    return out


def recursion_coefficients(which="gate", just_in_time=False) -> Dict[str, sp.Expr]:
    """Coefficients of p_g^2, p_g p_s, p_s^2, as polynomials in m = j - 1."""
    m = sp.symbols("m")
    expr = expanded_recursion(which, just_in_time)
    return {k: sp.expand(v.subs(_j, m + 1)) for k, v in _coeffs(expr).items()}


def gate_only_coefficient() -> int:
    return int(expanded_recursion("gate", storage_free=True).coeff(_pg, 2))


def equal_rates_coefficient():
    """p^(j) = [c0 + c1 (j-1) + c2 (j-1)^2] (p^(j-1))^2 when p_g = p_s at every level."""
    m = sp.symbols("m")
    expr = expanded_recursion("storage").subs(_pg, _ps).subs(_j, m + 1)
    poly = sp.Poly(sp.expand(expr / _ps ** 2), m)
    return [int(poly.coeff_monomial(m ** i)) for i in range(3)]


def toffoli_storage_free_coefficients():
    """pTof' = a p_g^2 + b p_g pTof + c pTof^2 with no storage errors and p_cat = 0."""
    acc = toffoli_final_accumulation()
    sigma = acc.p_g * _pg + acc.p_tof * _pt
    pec = 12 * _pg
    expr = sp.expand(PAIRS * (sigma ** 2 + 4 * sigma * pec + 8 * pec ** 2))
    poly = sp.Poly(expr, _pg, _pt)
    return {"pg^2": int(poly.coeff_monomial(_pg ** 2)),
            "pg*ptof": int(poly.coeff_monomial(_pg * _pt)),
            "ptof^2": int(poly.coeff_monomial(_pt ** 2))}


# -- reporting -----------------------------------------------------------------------------

@dataclass
class ThresholdSummary:
    mode: str
    threshold: float
    note: str


def threshold_summary(modes=None) -> List[ThresholdSummary]:
    modes = modes or [m for m in MODES if m != "toffoli_joint"]
    return [ThresholdSummary(m, solve_threshold(m), MODE_NOTES[m]) for m in modes]


def threshold_summary_csv(rows: List[ThresholdSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mode", "threshold", "note"])
    for r in rows:
        w.writerow([r.mode, f"{r.threshold:.6e}", r.note])
    return buf.getvalue()
