"""Erasure and depolarizing channel experiments.

Monte Carlo runs split their trials into fixed-size chunks, each with its
own RNG stream spawned from the master seed, so results depend only on
(seed, trials, parameters) and not on how many worker processes are used.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence

import numpy as np

from . import gf2
from .analysis import CostError, rates_csv
from .pauli import PauliOperator, popcount
from .stabilizer import StabilizerCode, find_logicals

CHUNK = 256          # trials per RNG stream


# -- erasures -------------------------------------------------------------------------

def _check_pattern(n, pattern):
    pattern = sorted(set(pattern))
    if any(q < 0 or q >= n for q in pattern):
        raise ValueError(f"erasure pattern {pattern} out of range for n={n}")
    return pattern


def erasure_correctable(code: StabilizerCode, pattern: Iterable[int]) -> bool:
    """True iff every Pauli on the erased qubits with zero syndrome is in S.

    Let V be the Paulis supported on the erased set.  Correctable iff
    dim(V n N(S)) == dim(V n S), both from ranks:
      dim(V n N(S)) = 2e - rank(syndromes of the 2e basis Paulis of V)
      dim(V n S)    = m  - rank(generators restricted to the other qubits)
    """
    n = code.n
    pattern = _check_pattern(n, pattern)
    e = len(pattern)
    if e == 0:
        return True
    gens = code.generators
    cols = []
    for q in pattern:
        # syndrome of X_q is the z bit of each generator on q, of Z_q the x bit
        cols.append(sum(((g.z >> q) & 1) << i for i, g in enumerate(gens)))
        cols.append(sum(((g.x >> q) & 1) << i for i, g in enumerate(gens)))
    dim_normalizer = 2 * e - gf2.rank(cols)
    keep = ~sum(1 << q for q in pattern) & ((1 << n) - 1)
    outside = [((g.x & keep) | ((g.z & keep) << n)) for g in gens]
    dim_stab = len(gens) - gf2.rank(outside)
    return dim_normalizer == dim_stab


def erasure_correctable_bruteforce(code: StabilizerCode, pattern) -> bool:
    """Enumerate all 4^e Paulis on the erased qubits (oracle for small e).

    Correctable iff every such Pauli that commutes with S lies in S.
    """
    n = code.n
    pattern = _check_pattern(n, pattern)
    e = len(pattern)
    if e == 0:
        return True
    # span all 4^e Paulis on the erased qubits, tracking syndrome and packed value
    syn = np.zeros(1, dtype=np.int64)
    val = np.zeros(1, dtype=np.int64)
    for q in pattern:
        for kind in "XZ":
            p = PauliOperator.single(n, q, kind)
            s = sum(((popcount(g.x & p.z) + popcount(g.z & p.x)) & 1) << i
                    for i, g in enumerate(code.generators))
            syn = np.concatenate([syn, syn ^ s])
            val = np.concatenate([val, val ^ p.symplectic])
    cand = val[syn == 0]
    rows = tuple(g.symplectic for g in code.generators)
    if len(rows) <= 16 and 2 * n < 63:
        return bool(np.isin(cand, _group_elements(rows)).all())
    elim = gf2.Eliminator()
    for r in rows:
        elim.add(r)
    return all(elim.contains(int(v)) for v in cand)


@lru_cache(maxsize=32)
def _group_elements(rows):
    """Sorted packed symplectic vectors of every element of span(rows)."""
    return np.array(sorted(gf2.span_elements(list(rows))), dtype=np.int64)


# -- random codes ------------------------------------------------------------------------

def _rand_int(rng, nbits):
    bits = rng.integers(0, 2, size=nbits)
    return int(sum(int(b) << i for i, b in enumerate(bits)))


def random_stabilizer(n, k, rng=None, logicals=True, name=None) -> StabilizerCode:
    """Random [[n, k]] stabilizer code.

    Each new generator is a uniformly random element of the symplectic
    complement of the rows so far, rejected if it lies in their span.
    Signs are random.  ``logicals=False`` skips computing logical operators.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    rng = np.random.default_rng(rng)
    m = n - k
    rows: List[int] = []
    elim = gf2.Eliminator()
    while len(rows) < m:
        comp = gf2.symplectic_complement(rows, n) if rows else [1 << j for j in range(2 * n)]
        while True:
            mask = _rand_int(rng, len(comp))
            v = 0
            for j, b in enumerate(comp):
                if (mask >> j) & 1:
                    v ^= b
            if v and not elim.contains(v):
                break
        elim.add(v)
        rows.append(v)
    gens = [PauliOperator.from_symplectic(n, v).with_phase(2 * int(rng.integers(0, 2)))
            for v in rows]
    lx, lz = find_logicals(n, gens) if logicals else ([], [])
    return StabilizerCode(n, k, gens, lx, lz, name=name or f"random[{n},{k}]")


# -- Monte Carlo plumbing ------------------------------------------------------------

@dataclass
class MonteCarloResult:
    n: int
    k: int
    p: float
    trials: int
    failures: int
    seed: int

    @property
    def failure_rate(self):
        return self.failures / self.trials if self.trials else 0.0

    @property
    def stderr(self):
        if not self.trials:
            return 0.0
        r = self.failure_rate
        return math.sqrt(max(r * (1 - r), 0.0) / self.trials)

    def row(self):
        return [self.n, self.k, f"{self.p:.6g}", self.trials, self.failures,
                f"{self.failure_rate:.6g}", f"{self.stderr:.6g}", self.seed]

    def to_dict(self):
        d = asdict(self)
        d["rate"] = self.failure_rate
        d["stderr"] = self.stderr
        return d


CSV_COLUMNS = ["n", "k", "p", "trials", "failures", "rate", "stderr", "seed"]


def results_csv(results: Sequence[MonteCarloResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        w.writerow(r.row())
    return buf.getvalue()


def _chunks(trials, seed):
    sizes = [CHUNK] * (trials // CHUNK) + ([trials % CHUNK] if trials % CHUNK else [])
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    return list(zip(sizes, seqs))


def _run_chunks(worker, args, trials, seed, jobs):
    tasks = [(args, size, ss) for size, ss in _chunks(trials, seed)]
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return sum(ex.map(worker, tasks))
    return sum(worker(t) for t in tasks)


def _erasure_chunk(task):
    (n, k, p), size, ss = task
    rng = np.random.default_rng(ss)
    fails = 0
    for _ in range(size):
        code = random_stabilizer(n, k, rng, logicals=False)
        erased = np.flatnonzero(rng.random(n) < p)
        if not erasure_correctable(code, erased.tolist()):
            fails += 1
    return fails


def erasure_monte_carlo(n, k, p, trials, seed=0, jobs=1) -> MonteCarloResult:
    """Fresh random [[n,k]] code per trial; each qubit erased with probability p."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    fails = _run_chunks(_erasure_chunk, (n, k, p), trials, seed, jobs)
    return MonteCarloResult(n, k, p, trials, fails, seed)


# -- depolarizing channel ------------------------------------------------------------------

class SyndromeDecoder:
    """Minimum-weight lookup decoder; ties go to the smallest packed pattern."""

    def __init__(self, code: StabilizerCode, max_syndrome_bits=20, max_cost=5e7):
        n, m = code.n, len(code.generators)
        if m > max_syndrome_bits:
            raise CostError(f"syndrome table with 2^{m} entries is too large")
        self.code = code
        self.n = n
        self.gx = np.array([g.x_bits for g in code.generators], dtype=np.int64).reshape(m, n)
        self.gz = np.array([g.z_bits for g in code.generators], dtype=np.int64).reshape(m, n)
        logs = list(code.logical_x) + list(code.logical_z)
        self.lx = np.array([p.x_bits for p in logs], dtype=np.int64).reshape(len(logs), n)
        self.lz = np.array([p.z_bits for p in logs], dtype=np.int64).reshape(len(logs), n)
        self.table = self._build(max_cost)

    def _syndrome_of(self, p):
        return sum(((popcount(g.x & p.z) + popcount(g.z & p.x)) & 1) << i
                   for i, g in enumerate(self.code.generators))

    def _build(self, max_cost):
        n = self.n
        m = len(self.code.generators)
        table = {0: 0}
        cost = 0
        w = 0
        while len(table) < 2 ** m and w < n:
            w += 1
            cost += math.comb(n, w) * 3 ** w
            if cost > max_cost:
                raise CostError("syndrome table needs too many candidate errors")
            found = {}
            for support in itertools.combinations(range(n), w):
                for kinds in itertools.product("XYZ", repeat=w):
                    p = PauliOperator.identity(n)
                    for q, s in zip(support, kinds):
                        p = p * PauliOperator.single(n, q, s)
                    s = self._syndrome_of(p)
                    if s in table:
                        continue
                    v = p.symplectic
                    if s not in found or v < found[s]:
                        found[s] = v
            table.update(found)
        return table

    def correction(self, syndrome: int) -> int:
        """Packed symplectic correction for an integer syndrome."""
        return self.table[syndrome]

    def decode_failures(self, ex, ez):
        """Boolean array: which (trials x n) errors leave a logical residual."""
        syn = ((ex @ self.gz.T + ez @ self.gx.T) % 2)
        weights = 1 << np.arange(syn.shape[1], dtype=np.int64)
        sidx = syn @ weights
        n = self.n
        corr = np.array([self.table[int(s)] for s in sidx], dtype=object)
        cx = np.array([[(int(c) >> q) & 1 for q in range(n)] for c in corr],
                      dtype=np.int64).reshape(len(corr), n)
        cz = np.array([[(int(c) >> (n + q)) & 1 for q in range(n)] for c in corr],
                      dtype=np.int64).reshape(len(corr), n)
        rx, rz = ex ^ cx, ez ^ cz
        anti = (rx @ self.lz.T + rz @ self.lx.T) % 2
        return anti.any(axis=1)


def _sample_depolarizing(rng, size, n, p):
    """Per qubit: I w.p. 1-p, else X, Y, Z each with probability p/3."""
    u = rng.random((size, n))
    which = np.minimum(np.floor(3 * u / p), 2).astype(int) if p > 0 else 0
    kind = np.where(u < p, 1 + which, 0)
    ex = ((kind == 1) | (kind == 2)).astype(np.int64)      # X or Y
    ez = ((kind == 2) | (kind == 3)).astype(np.int64)      # Y or Z
    return ex, ez


_DECODERS = {}


def _depol_chunk(task):
    (code, p), size, ss = task
    key = id(code)
    dec = _DECODERS.get(key)
    if dec is None or dec.code is not code:
        dec = _DECODERS[key] = SyndromeDecoder(code)
    rng = np.random.default_rng(ss)
    ex, ez = _sample_depolarizing(rng, size, code.n, p)
    return int(dec.decode_failures(ex, ez).sum())


def depolarizing_monte_carlo(code: StabilizerCode, p, trials, seed=0, jobs=1) -> MonteCarloResult:
    """Sample depolarizing errors, decode with the lookup table, count logical failures."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    SyndromeDecoder(code)          # fail early if the table is too large
    fails = _run_chunks(_depol_chunk, (code, p), trials, seed, jobs)
    return MonteCarloResult(code.n, code.k, p, trials, fails, seed)


def exact_depolarizing_failure(code: StabilizerCode, p, max_n=10) -> float:
    """Failure probability of the lookup decoder summed over all 4^n errors."""
    n = code.n
    if n > max_n:
        raise CostError(f"exhaustive sum over 4^{n} errors is too large")
    dec = SyndromeDecoder(code)
    total = 0.0
    for kinds in itertools.product(range(4), repeat=n):
        ex = np.array([[1 if k in (1, 2) else 0 for k in kinds]], dtype=np.int64)
        ez = np.array([[1 if k in (2, 3) else 0 for k in kinds]], dtype=np.int64)
        w = sum(1 for k in kinds if k)
        if dec.decode_failures(ex, ez)[0]:
            total += (p / 3) ** w * (1 - p) ** (n - w)
    return total


# -- capacity curves ------------------------------------------------------------------

def capacity_curves(p_grid) -> str:
    """CSV of the six asymptotic rate curves at each p of the grid."""
    ps = list(p_grid)
    if any(not 0 <= p <= 0.5 for p in ps):
        raise ValueError("capacity grid must lie in [0, 0.5]")
    return rates_csv(ps)
