"""Stabilizer codes: validation, check matrices, syndromes, standard form.

A :class:`StabilizerCode` holds n-k signed generators and k pairs of
logical operators.  Generators printed without a sign are taken with
phase 0 (i.e. +1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import gf2
from .pauli import (DimensionError, PauliOperator, commutes, format_pauli,
                    multiply, parse_pauli, product)


class CodeError(ValueError):
    """Invalid code or failed construction."""


def _as_pauli(p, n=None):
    q = parse_pauli(p) if isinstance(p, str) else p
    if n is not None and q.n != n:
        raise DimensionError(f"expected {n} qubits, got {q.n} in {format_pauli(q)}")
    return q


@dataclass
class StabilizerCode:
    n: int
    k: int
    generators: List[PauliOperator]
    logical_x: List[PauliOperator] = field(default_factory=list)
    logical_z: List[PauliOperator] = field(default_factory=list)
    name: Optional[str] = None
    claimed_distance: Optional[int] = None

    def __post_init__(self):
        self.generators = [_as_pauli(g, self.n) for g in self.generators]
        self.logical_x = [_as_pauli(g, self.n) for g in self.logical_x]
        self.logical_z = [_as_pauli(g, self.n) for g in self.logical_z]

    @classmethod
    def from_strings(cls, generators, logical_x=(), logical_z=(), name=None,
                     claimed_distance=None):
        gens = [parse_pauli(g) for g in generators]
        n = gens[0].n if gens else parse_pauli((list(logical_x) or list(logical_z))[0]).n
        return cls(n, n - len(gens), gens, list(logical_x), list(logical_z), name,
                   claimed_distance)

    @property
    def r(self):
        """Number of generators, n - k."""
        return len(self.generators)

    def rows(self):
        return [g.symplectic for g in self.generators]

    def params(self):
        d = self.claimed_distance
        return f"[{self.n},{self.k}" + (f",{d}]" if d is not None else "]")

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<StabilizerCode{nm} {self.params()}>"

    def copy(self, **kw):
        base = dict(n=self.n, k=self.k, generators=list(self.generators),
                    logical_x=list(self.logical_x), logical_z=list(self.logical_z),
                    name=self.name, claimed_distance=self.claimed_distance)
        base.update(kw)
        return StabilizerCode(**base)


# -- group membership -------------------------------------------------------

class StabilizerGroup:
    """Membership tests for the group generated by commuting Paulis."""

    def __init__(self, generators, n=None):
        self.generators = list(generators)
        self.n = self.generators[0].n if self.generators else n
        self._elim = gf2.Eliminator()
        for g in self.generators:
            self._elim.add(g.symplectic)

    def combination(self, p):
        """Bitmask of generators whose product matches p up to phase, or None."""
        return self._elim.express(p.symplectic)

    def element(self, mask):
        gens = [g for i, g in enumerate(self.generators) if (mask >> i) & 1]
        return product(gens, self.n)

    def contains_unsigned(self, p):
        return self._elim.contains(p.symplectic)

    def relative_phase(self, p):
        """c in {0..3} with p = i^c * (group element), or None if bits differ."""
        mask = self.combination(p)
        if mask is None:
            return None
        return (p.phase - self.element(mask).phase) % 4

    def contains(self, p):
        return self.relative_phase(p) == 0


def same_group(gens_a, gens_b):
    """True when the two generator lists generate the same signed group."""
    ga, gb = StabilizerGroup(gens_a), StabilizerGroup(gens_b)
    if gf2.rank([g.symplectic for g in gens_a]) != gf2.rank([g.symplectic for g in gens_b]):
        return False
    return all(ga.contains(g) for g in gens_b) and all(gb.contains(g) for g in gens_a)


def in_stabilizer(code, p, signed=True):
    grp = StabilizerGroup(code.generators, code.n)
    return grp.contains(p) if signed else grp.contains_unsigned(p)


# -- validation ---------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    checks: dict
    problems: list

    def __bool__(self):
        return self.ok


def validate(code: StabilizerCode) -> ValidationReport:
    problems = []
    checks = {}
    gens, lx, lz = code.generators, code.logical_x, code.logical_z
    m = len(gens)

    checks["shape"] = m == code.n - code.k and len(lx) == len(lz) == code.k
    if not checks["shape"]:
        problems.append(f"expected {code.n - code.k} generators and {code.k} logical pairs, "
                        f"got {m}, {len(lx)}, {len(lz)}")

    checks["hermitian"] = all(g.is_hermitian for g in gens)
    for i, g in enumerate(gens):
        if not g.is_hermitian:
            problems.append(f"generator {i} squares to -I (phase {g.phase})")

    bad = [(i, j) for i in range(m) for j in range(i + 1, m) if commutes(gens[i], gens[j])]
    checks["commuting"] = not bad
    problems += [f"generators {i} and {j} anticommute" for i, j in bad]

    checks["independent"] = gf2.independent([g.symplectic for g in gens])
    if not checks["independent"]:
        problems.append("generators are not independent over GF(2)")

    # -I in the group can only arise from dependent or non-Hermitian generators
    checks["no_minus_identity"] = checks["independent"] and checks["hermitian"]

    lbad = []
    for nm, ops in (("X", lx), ("Z", lz)):
        for a, op in enumerate(ops):
            for i, g in enumerate(gens):
                if commutes(op, g):
                    lbad.append(f"logical {nm}{a} anticommutes with generator {i}")
    for a in range(len(lx)):
        for b in range(len(lz)):
            want = 1 if a == b else 0
            if commutes(lx[a], lz[b]) != want:
                lbad.append(f"logical X{a} / Z{b} commutation wrong")
    for ops, nm in ((lx, "X"), (lz, "Z")):
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                if commutes(ops[a], ops[b]):
                    lbad.append(f"logical {nm}{a} and {nm}{b} anticommute")
    grp = StabilizerGroup(gens, code.n)
    for nm, ops in (("X", lx), ("Z", lz)):
        for a, op in enumerate(ops):
            if not op.is_hermitian:
                lbad.append(f"logical {nm}{a} is not Hermitian")
            if grp.contains_unsigned(op):
                lbad.append(f"logical {nm}{a} lies in the stabilizer")
    checks["logicals"] = not lbad
    problems += lbad
    return ValidationReport(not problems, checks, problems)


# -- matrices and syndromes ---------------------------------------------------

def check_matrix(code: StabilizerCode) -> np.ndarray:
    """(n-k) x 2n 0/1 matrix, x half on the left, z half on the right."""
    out = np.zeros((len(code.generators), 2 * code.n), dtype=np.uint8)
    for i, g in enumerate(code.generators):
        out[i, :code.n] = g.x_bits
        out[i, code.n:] = g.z_bits
    return out


def generators_from_check_matrix(mat) -> List[PauliOperator]:
    mat = np.asarray(mat, dtype=np.uint8)
    n = mat.shape[1] // 2
    return [PauliOperator.from_bits(row[:n], row[n:]) for row in mat]


def syndrome(code: StabilizerCode, e: PauliOperator) -> List[int]:
    """Bit i is 1 iff e anticommutes with generator i."""
    if e.n != code.n:
        raise DimensionError(f"error acts on {e.n} qubits, code has {code.n}")
    return [commutes(g, e) for g in code.generators]


def syndrome_int(code, e):
    return sum(b << i for i, b in enumerate(syndrome(code, e)))


# -- standard form ------------------------------------------------------------

@dataclass
class StandardFormResult:
    """Standard form of a check matrix.

    ``matrix`` columns are permuted qubits: column c holds original qubit
    ``qubit_permutation[c]``.  ``row_ops`` records, for each row, the bitmask
    of original generators multiplied together to produce it, so the signed
    row operators are available via ``rows_as_paulis``.
    """
    matrix: np.ndarray
    r: int
    qubit_permutation: List[int]
    row_ops: List[int]
    code: StabilizerCode

    @property
    def n(self):
        return self.code.n

    @property
    def k(self):
        return self.code.k

    def blocks(self):
        n, m, r = self.n, self.code.r, self.r
        X, Z = self.matrix[:, :n], self.matrix[:, n:]
        return dict(A1=X[:r, r:m], A2=X[:r, m:], B=Z[:r, :r], C1=Z[:r, r:m],
                    C2=Z[:r, m:], D=Z[r:, :r], E=Z[r:, m:])

    def unpermute(self, x_cols, z_cols, phase=0):
        """Pauli on original qubits from bit rows indexed by permuted column."""
        x = z = 0
        for c, q in enumerate(self.qubit_permutation):
            x |= int(x_cols[c]) << q
            z |= int(z_cols[c]) << q
        return PauliOperator(self.n, x, z, phase)

    def rows_as_paulis(self):
        """Signed generators (original qubit order) equal to the matrix rows."""
        gens = self.code.generators
        out = []
        for mask in self.row_ops:
            out.append(product([g for i, g in enumerate(gens) if (mask >> i) & 1], self.n))
        return out

    def format_rows(self):
        n = self.n
        return ["".join(str(b) for b in row[:n]) + "|" + "".join(str(b) for b in row[n:])
                for row in self.matrix]


def standard_form(code: StabilizerCode) -> StandardFormResult:
    """Gaussian elimination with qubit swaps into [[I A1 A2|B C1 C2],[0 0 0|D I E]].

    Pivot choice: lowest column index holding a 1, then lowest row.
    """
    n, m = code.n, code.r
    M = check_matrix(code).astype(np.uint8)
    ops = [1 << i for i in range(m)]
    perm = list(range(n))

    def swap_cols(a, b):
        if a == b:
            return
        M[:, [a, b]] = M[:, [b, a]]
        M[:, [n + a, n + b]] = M[:, [n + b, n + a]]
        perm[a], perm[b] = perm[b], perm[a]

    def swap_rows(a, b):
        if a != b:
            M[[a, b]] = M[[b, a]]
            ops[a], ops[b] = ops[b], ops[a]

    def pivot(rows, offset, col_lo):
        sub = M[rows.start:rows.stop, offset + col_lo: offset + n]
        if sub.size == 0 or not sub.any():
            return None
        cols = np.nonzero(sub.any(axis=0))[0]
        c = int(cols[0])
        j = int(np.nonzero(sub[:, c])[0][0])
        return rows.start + j, col_lo + c

    r = 0
    for i in range(m):
        hit = pivot(range(i, m), 0, i)
        if hit is None:
            break
        j, c = hit
        swap_rows(i, j)
        swap_cols(i, c)
        for t in range(m):
            if t != i and M[t, i]:
                M[t] ^= M[i]
                ops[t] ^= ops[i]
        r = i + 1

    for i in range(r, m):
        hit = pivot(range(i, m), n, i)
        if hit is None:
            raise CodeError("generators are dependent; no standard form")
        j, c = hit
        swap_rows(i, j)
        swap_cols(i, c)
        for t in range(r, m):
            if t != i and M[t, n + i]:
                M[t] ^= M[i]
                ops[t] ^= ops[i]

    return StandardFormResult(M, r, perm, ops, code)


def standard_logicals(sf: StandardFormResult):
    """Logical X and Z operators read off the standard form blocks."""
    n, k, m, r = sf.n, sf.k, sf.code.r, sf.r
    b = sf.blocks()
    ET = b["E"].T.astype(int)          # k x (m-r)
    C1T = b["C1"].T.astype(int)        # (m-r) x r
    C2T = b["C2"].T.astype(int)        # k x r
    A2T = b["A2"].T.astype(int)        # k x r
    V1 = (ET @ C1T + C2T) % 2 if m > r else C2T % 2
    xs, zs = [], []
    for i in range(k):
        xc = np.zeros(n, dtype=int)
        zc = np.zeros(n, dtype=int)
        xc[r:m] = ET[i]
        xc[m + i] = 1
        zc[:r] = V1[i]
        xs.append(sf.unpermute(xc, zc))
        xz = np.zeros(n, dtype=int)
        zz = np.zeros(n, dtype=int)
        zz[:r] = A2T[i]
        zz[m + i] = 1
        zs.append(sf.unpermute(xz, zz))
    return xs, zs


def with_standard_logicals(code: StabilizerCode) -> StabilizerCode:
    xs, zs = standard_logicals(standard_form(code))
    return code.copy(logical_x=xs, logical_z=zs)


def normalizer_basis(code):
    """Packed symplectic basis of N(S) (phaseless), dimension n + k."""
    return gf2.symplectic_complement(code.rows(), code.n)


# -- single-qubit rotations used for normalisation ---------------------------

def _rotate(p: PauliOperator, q: int, kind: str) -> PauliOperator:
    """Conjugate by H ('H': X<->Z, Y->-Y) or by the Y<->Z swap ('Q': X->-X)."""
    bx, bz = (p.x >> q) & 1, (p.z >> q) & 1
    ph = p.phase
    if kind == "H":
        nx, nz = bz, bx
        if bx and bz:
            ph += 2
    else:  # Q swaps Y and Z, X -> -X
        nx, nz = bx ^ bz, bz
        if bx and not bz:
            ph += 2
    x = (p.x & ~(1 << q)) | (nx << q)
    z = (p.z & ~(1 << q)) | (nz << q)
    return PauliOperator(p.n, x, z, ph)


def rotate_code(code, rotations):
    """Apply single-qubit rotations {qubit: 'H'|'Q'} to every operator of a code."""
    def rot(p):
        for q, kind in rotations.items():
            p = _rotate(p, q, kind)
        return p
    return code.copy(generators=[rot(g) for g in code.generators],
                     logical_x=[rot(g) for g in code.logical_x],
                     logical_z=[rot(g) for g in code.logical_z])


@dataclass
class ClassicalCode:
    generator: np.ndarray   # k x (r+k)
    r: int
    rotations: dict
    standard: StandardFormResult

    def min_distance(self):
        if self.generator.shape[0] == 0:
            return None
        return gf2.min_weight_codeword(gf2.from_matrix(self.generator.tolist()))


def classical_code_from_quantum(code_or_sf) -> ClassicalCode:
    """Classical [r+k, k] code with generator matrix (A2^T | I).

    If every generator has an X part (r = n-k), the last standard-form row
    is first rotated qubit-by-qubit into a product of Z's (H where it has
    X, the Y<->Z swap where it has Y), which forces r <= n-k-1.
    """
    sf = code_or_sf if isinstance(code_or_sf, StandardFormResult) else standard_form(code_or_sf)
    code = sf.code
    rotations = {}
    if code.k > 0 and sf.r == code.r and code.r > 0:
        last = sf.rows_as_paulis()[-1]
        for q in range(code.n):
            s = last.symbol(q)
            if s == "X":
                rotations[q] = "H"
            elif s == "Y":
                rotations[q] = "Q"
        sf = standard_form(rotate_code(code, rotations))
    k, r = code.k, sf.r
    A2T = sf.blocks()["A2"].T.astype(np.uint8)
    gen = np.concatenate([A2T.reshape(k, r), np.eye(k, dtype=np.uint8)], axis=1)
    return ClassicalCode(gen, r, rotations, sf)


def steane_ancilla_stabilizer(code: StabilizerCode) -> StabilizerCode:
    """2n-qubit stabilizer state used for Steane-style syndrome extraction.

    Z-type rows come from the (z|x) check rows; the X-type rows span every
    X-type operator commuting with them.
    """
    n = code.n
    zrows = [g.z | (g.x << n) for g in code.generators]
    gens = [PauliOperator(2 * n, 0, v) for v in zrows]
    gens += [PauliOperator(2 * n, v, 0) for v in gf2.nullspace(zrows, 2 * n)]
    return StabilizerCode(2 * n, 0, gens, name=f"steane-ancilla({code.name or 'code'})")


# -- logical operators for arbitrary generator sets ---------------------------

def find_logicals(n, generators):
    """Some valid logical X/Z pairs via symplectic Gram-Schmidt on N(S)/S."""
    rows = [g.symplectic for g in generators]
    grp = gf2.Eliminator()
    for r in rows:
        grp.add(r)
    pool = []
    for v in gf2.symplectic_complement(rows, n):
        if grp.add(v):
            pool.append(v)

    def sp(a, b):
        mask = (1 << n) - 1
        return (bin((a & mask) & (b >> n)).count("1") + bin((a >> n) & (b & mask)).count("1")) & 1

    xs, zs = [], []
    while pool:
        a = pool.pop(0)
        idx = next((i for i, b in enumerate(pool) if sp(a, b)), None)
        if idx is None:
            raise CodeError("normalizer has no symplectic partner; generators invalid")
        b = pool.pop(idx)
        pool = [v ^ (b if sp(v, a) else 0) ^ (a if sp(v, b) else 0) for v in pool]
        xs.append(PauliOperator.from_symplectic(n, a))
        zs.append(PauliOperator.from_symplectic(n, b))
    return xs, zs


# -- file format --------------------------------------------------------------

CODE_FILE_FIELDS = ("name", "n", "k", "generators", "logical_x", "logical_z",
                    "claimed_distance")


def code_to_dict(code):
    return {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "generators": [format_pauli(g) for g in code.generators],
        "logical_x": [format_pauli(g) for g in code.logical_x],
        "logical_z": [format_pauli(g) for g in code.logical_z],
        "claimed_distance": code.claimed_distance,
    }


def dumps_code(code) -> str:
    return json.dumps(code_to_dict(code), indent=2) + "\n"


class CodeFileError(ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line, self.column = line, column


def loads_code(text) -> StabilizerCode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeFileError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise CodeFileError("code file must be an object")
    missing = [f for f in ("n", "k", "generators") if f not in data]
    if missing:
        raise CodeFileError(f"missing fields: {', '.join(missing)}")
    try:
        code = StabilizerCode(int(data["n"]), int(data["k"]),
                              [parse_pauli(s) for s in data["generators"]],
                              [parse_pauli(s) for s in data.get("logical_x", [])],
                              [parse_pauli(s) for s in data.get("logical_z", [])],
                              data.get("name"), data.get("claimed_distance"))
    except (ValueError, TypeError) as exc:
        raise CodeFileError(str(exc)) from None
    if len(code.generators) != code.n - code.k:
        raise CodeFileError(f"{len(code.generators)} generators but n-k = {code.n - code.k}")
    if code.k and not code.logical_x:
        code = with_standard_logicals(code)
    return code


def load_code(path):
    with open(path) as fh:
        return loads_code(fh.read())


def save_code(code, path):
    with open(path, "w") as fh:
        fh.write(dumps_code(code))
