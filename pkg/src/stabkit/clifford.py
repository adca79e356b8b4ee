"""Clifford operations as Pauli-conjugation tableaux.

Gate semantics (conjugation U P U^dagger):

    H    X <-> Z, Y -> -Y
    P    X -> Y,  Y -> -X, Z -> Z        (P = diag(1, i))
    PDG  inverse of P
    CNOT X(c) -> X(c) X(t), Z(t) -> Z(c) Z(t)
    CZ, CY  controlled Z / controlled Y
    T    the composite H.PDG: X -> Y -> Z -> X

Circuits are applied in list order (first gate acts first).  Stabilizer
states keep signed generators plus optional tracked logical operators;
measurement follows the "replace one anticommuting generator, repair the
rest" rule and by default projects onto the +1 outcome (correcting a -1
result with the replaced generator).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import gf2
from .circuits import Circuit, Gate, INVERSE
from .pauli import PauliOperator, commutes, multiply, parse_pauli, product
from .stabilizer import (StabilizerCode, StabilizerGroup, standard_form,
                         standard_logicals)


class TableauError(ValueError):
    """Images do not define a valid Clifford operation."""


class MeasurementError(ValueError):
    pass


# -- single gate conjugation -----------------------------------------------------

def conjugate_by_gate(p: PauliOperator, name: str, qubits: Sequence[int]) -> PauliOperator:
    """Return U p U^dagger for one gate U."""
    x, z, ph = p.x, p.z, p.phase
    if name in ("CZ", "CY"):
        a, b = qubits
        seq = ([("H", (b,)), ("CNOT", (a, b)), ("H", (b,))] if name == "CZ"
               else [("PDG", (b,)), ("CNOT", (a, b)), ("P", (b,))])
        for g, qs in seq:
            p = conjugate_by_gate(p, g, qs)
        return p
    if name == "SWAP":
        a, b = qubits
        bits = lambda v: ((v >> a) & 1, (v >> b) & 1)
        xa, xb = bits(x)
        za, zb = bits(z)
        x = (x & ~((1 << a) | (1 << b))) | (xa << b) | (xb << a)
        z = (z & ~((1 << a) | (1 << b))) | (za << b) | (zb << a)
        return PauliOperator(p.n, x, z, ph)
    if name == "CNOT":
        c, t = qubits
        xc, zc = (x >> c) & 1, (z >> c) & 1
        xt, zt = (x >> t) & 1, (z >> t) & 1
        if xc and zt and not (xt ^ zc):
            ph += 2
        x ^= xc << t
        z ^= zt << c
        return PauliOperator(p.n, x, z, ph)
    (q,) = qubits
    bit = 1 << q
    bx, bz = (x >> q) & 1, (z >> q) & 1
    if name == "H":
        x = (x & ~bit) | (bz << q)
        z = (z & ~bit) | (bx << q)
        if bx and bz:
            ph += 2
    elif name == "P":
        if bx:
            z ^= bit
            if bz:
                ph += 2
    elif name == "PDG":
        if bx:
            z ^= bit
            if not bz:
                ph += 2
    elif name == "X":
        ph += 2 * bz
    elif name == "Z":
        ph += 2 * bx
    elif name == "Y":
        ph += 2 * (bx ^ bz)
    elif name == "T":
        return conjugate_by_gate(conjugate_by_gate(p, "PDG", qubits), "H", qubits)
    else:
        raise ValueError(f"{name} is not a Clifford gate")
    return PauliOperator(p.n, x, z, ph)


# -- tableaux -------------------------------------------------------------------------

@dataclass
class CliffordTableau:
    """Images of X_q and Z_q under conjugation by a Clifford unitary."""
    n: int
    x_images: List[PauliOperator]
    z_images: List[PauliOperator]

    @classmethod
    def identity(cls, n):
        return cls(n, [PauliOperator.single(n, q, "X") for q in range(n)],
                   [PauliOperator.single(n, q, "Z") for q in range(n)])

    @classmethod
    def from_images(cls, x_images, z_images, check=True):
        xs = [parse_pauli(p) if isinstance(p, str) else p for p in x_images]
        zs = [parse_pauli(p) if isinstance(p, str) else p for p in z_images]
        t = cls(len(xs), xs, zs)
        if check:
            problems = t.problems()
            if problems:
                raise TableauError("; ".join(problems))
        return t

    @classmethod
    def from_circuit(cls, circuit: Circuit):
        t = cls.identity(circuit.n)
        for g in circuit.gates:
            if g.name in ("MEASURE", "TOFFOLI"):
                raise TableauError(f"{g.name} is not a Clifford gate")
            t = t.apply_gate(g.name, g.qubits)
        return t

    @classmethod
    def gate(cls, n, name, *qubits):
        return cls.identity(n).apply_gate(name, qubits)

    def apply_gate(self, name, qubits) -> "CliffordTableau":
        """Tableau of (gate after self)."""
        return CliffordTableau(self.n,
                               [conjugate_by_gate(p, name, qubits) for p in self.x_images],
                               [conjugate_by_gate(p, name, qubits) for p in self.z_images])

    def conjugate(self, p: PauliOperator) -> PauliOperator:
        """U p U^dagger."""
        if p.n != self.n:
            raise ValueError("dimension mismatch")
        acc = PauliOperator(self.n, 0, 0, p.phase + bin(p.x & p.z).count("1"))
        for q in range(self.n):
            if (p.x >> q) & 1:
                acc = multiply(acc, self.x_images[q])
            if (p.z >> q) & 1:
                acc = multiply(acc, self.z_images[q])
        return acc

    def then(self, other: "CliffordTableau") -> "CliffordTableau":
        """Tableau of applying self first, then other."""
        return CliffordTableau(self.n, [other.conjugate(p) for p in self.x_images],
                               [other.conjugate(p) for p in self.z_images])

    def inverse(self) -> "CliffordTableau":
        n = self.n
        elim = gf2.Eliminator()
        for p in self.x_images + self.z_images:
            elim.add(p.symplectic)
        out = []
        for target in ([PauliOperator.single(n, q, "X") for q in range(n)]
                       + [PauliOperator.single(n, q, "Z") for q in range(n)]):
            mask = elim.express(target.symplectic)
            if mask is None:
                raise TableauError("tableau is not invertible")
            pre = PauliOperator(n, mask & ((1 << n) - 1), mask >> n)
            img = self.conjugate(pre)
            out.append(pre.with_phase(target.phase - img.phase))
        return CliffordTableau(n, out[:n], out[n:])

    def problems(self):
        out = []
        ims = self.x_images + self.z_images
        if len(self.x_images) != self.n or len(self.z_images) != self.n:
            return ["wrong number of images"]
        for p in ims:
            if p.n != self.n:
                return ["image has the wrong number of qubits"]
            if p.phase % 2:
                out.append(f"image {p} is not Hermitian")
        for i in range(self.n):
            for j in range(self.n):
                if commutes(self.x_images[i], self.z_images[j]) != (i == j):
                    out.append(f"images of X{i} and Z{j} have the wrong commutation")
                if j > i and commutes(self.x_images[i], self.x_images[j]):
                    out.append(f"images of X{i} and X{j} anticommute")
                if j > i and commutes(self.z_images[i], self.z_images[j]):
                    out.append(f"images of Z{i} and Z{j} anticommute")
        return out

    def is_valid(self):
        return not self.problems()

    def equal_up_to_pauli(self, other) -> bool:
        """Same images up to signs, i.e. equal after a Pauli correction."""
        return (self.n == other.n
                and [p.unsigned() for p in self.x_images + self.z_images]
                == [p.unsigned() for p in other.x_images + other.z_images])

    def __eq__(self, other):
        return (isinstance(other, CliffordTableau) and self.n == other.n
                and self.x_images == other.x_images and self.z_images == other.z_images)

    def symplectic_matrix(self):
        """2n x 2n 0/1 matrix whose row i is the packed image of X_i (then Z_i)."""
        n = self.n
        m = np.zeros((2 * n, 2 * n), dtype=np.uint8)
        for i, p in enumerate(self.x_images + self.z_images):
            m[i, :n] = p.x_bits
            m[i, n:] = p.z_bits
        return m

    def lines(self):
        from .pauli import format_pauli
        return [format_pauli(p, plus=True) for p in self.x_images + self.z_images]


def parse_tableau(text: str) -> CliffordTableau:
    """2n signed Pauli lines: images of X_0..X_{n-1}, then of Z_0..Z_{n-1}."""
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    rows = [r for r in rows if r]
    if not rows or len(rows) % 2:
        raise TableauError("tableau needs an even, nonzero number of Pauli lines")
    ps = [parse_pauli(r) for r in rows]
    n = len(ps) // 2
    if any(p.n != n for p in ps):
        raise TableauError(f"every line must act on n = {n} qubits")
    return CliffordTableau.from_images(ps[:n], ps[n:])


def format_tableau(t: CliffordTableau) -> str:
    return "\n".join(t.lines()) + "\n"


def gate_tableau(name, n=None):
    """Tableau of a named one- or two-qubit gate (T included)."""
    width = 2 if name in ("CNOT", "CZ", "CY", "SWAP") else 1
    n = n or width
    return CliffordTableau.identity(n).apply_gate(name, tuple(range(width)))


def random_tableau(n, rng=None, depth=None) -> CliffordTableau:
    """Tableau of a random circuit of H, P, CNOT and Pauli gates."""
    rng = rng or random.Random()
    depth = depth if depth is not None else 8 * n * n + 10
    t = CliffordTableau.identity(n)
    for _ in range(depth):
        r = rng.random()
        if n > 1 and r < 0.4:
            a, b = rng.sample(range(n), 2)
            t = t.apply_gate("CNOT", (a, b))
        else:
            t = t.apply_gate(rng.choice(["H", "P", "X", "Z"]), (rng.randrange(n),))
    return t


def transversal(op: CliffordTableau, n: int) -> CliffordTableau:
    """Apply an r-qubit operation bitwise across r blocks of n qubits.

    Block b occupies qubits b*n .. b*n + n - 1.
    """
    r = op.n
    N = r * n

    def spread(p, q):
        x = z = 0
        for b in range(r):
            x |= ((p.x >> b) & 1) << (b * n + q)
            z |= ((p.z >> b) & 1) << (b * n + q)
        return PauliOperator(N, x, z, p.phase)

    xs, zs = [None] * N, [None] * N
    for b in range(r):
        for q in range(n):
            xs[b * n + q] = spread(op.x_images[b], q)
            zs[b * n + q] = spread(op.z_images[b], q)
    return CliffordTableau(N, xs, zs)


# -- stabilizer states with tracked logicals -------------------------------------------

@dataclass
class MeasurementResult:
    outcome: int          # raw +1 / -1 result
    deterministic: bool


class StabilizerState:
    """Signed commuting generators plus tracked logical X/Z operators.

    With n generators this is a stabilizer state; with fewer it describes
    a code space, and the logical operators record how encoded information
    moves under gates and measurements.
    """

    def __init__(self, n, generators=(), logical_x=(), logical_z=()):
        self.n = n
        self.generators = [parse_pauli(g) if isinstance(g, str) else g for g in generators]
        self.logical_x = [parse_pauli(g) if isinstance(g, str) else g for g in logical_x]
        self.logical_z = [parse_pauli(g) if isinstance(g, str) else g for g in logical_z]

    @classmethod
    def zero(cls, n):
        return cls(n, [PauliOperator.single(n, q, "Z") for q in range(n)])

    @classmethod
    def from_code(cls, code: StabilizerCode):
        return cls(code.n, code.generators, code.logical_x, code.logical_z)

    def copy(self):
        return StabilizerState(self.n, self.generators, self.logical_x, self.logical_z)

    def _map(self, fn):
        self.generators = [fn(p) for p in self.generators]
        self.logical_x = [fn(p) for p in self.logical_x]
        self.logical_z = [fn(p) for p in self.logical_z]

    def apply_gate(self, name, qubits):
        self._map(lambda p: conjugate_by_gate(p, name, qubits))
        return self

    def apply_tableau(self, t: CliffordTableau):
        self._map(t.conjugate)
        return self

    def group(self):
        return StabilizerGroup(self.generators, self.n)

    def measure(self, a, rng=None, outcome=None, correct=True) -> MeasurementResult:
        """Measure the Hermitian Pauli ``a``.

        ``outcome`` forces the raw result of a random measurement.  With
        ``correct`` the -1 branch is mapped back onto +1 by the replaced
        generator, so afterwards +a is a stabilizer.
        """
        a = parse_pauli(a) if isinstance(a, str) else a
        if a.n != self.n:
            raise MeasurementError("measured operator has the wrong size")
        if not a.is_hermitian:
            raise MeasurementError("measured operator must be Hermitian")
        anti = [i for i, g in enumerate(self.generators) if commutes(g, a)]
        if not anti:
            rel = self.group().relative_phase(a)
            if rel is None:
                raise MeasurementError(f"{a} is a logical operator; its outcome is not "
                                       f"determined by the stabilizer")
            return MeasurementResult(1 if rel == 0 else -1, True)
        i0 = anti[0]
        g = self.generators[i0]
        fix = lambda p: multiply(p, g) if commutes(p, a) else p
        self.generators = [fix(p) if j != i0 else p for j, p in enumerate(self.generators)]
        self.logical_x = [fix(p) for p in self.logical_x]
        self.logical_z = [fix(p) for p in self.logical_z]
        if outcome is None:
            rng = rng or random.Random()
            outcome = 1 if rng.random() < 0.5 else -1
        sign = 1 if correct else outcome
        self.generators[i0] = a if sign == 1 else -a
        return MeasurementResult(outcome, False)

    def equivalent(self, a, b):
        """True when a and b act identically on the stabilized space."""
        a = parse_pauli(a) if isinstance(a, str) else a
        b = parse_pauli(b) if isinstance(b, str) else b
        return self.group().contains(multiply(a, b))

    def run(self, circuit: Circuit, rng=None, outcomes=None, correct=True):
        """Apply a circuit; returns the list of raw measurement outcomes."""
        results = []
        forced = list(outcomes or [])
        for g in circuit.gates:
            if g.name == "MEASURE":
                x = z = 0
                for sym, q in zip(g.pauli, g.qubits):
                    x |= (sym in "XY") << q
                    z |= (sym in "ZY") << q
                res = self.measure(PauliOperator(self.n, x, z), rng,
                                   forced.pop(0) if forced else None, correct)
                results.append(res.outcome)
            elif g.name == "TOFFOLI":
                raise TableauError("TOFFOLI needs the dense simulator")
            else:
                self.apply_gate(g.name, g.qubits)
        return results


def read_logicals(generators, ops, ref_x, ref_z):
    """Express each operator of ``ops`` as a logical Pauli in the reference basis.

    Bits come from commutation with the reference logicals; the phase from
    the leftover stabilizer element.  Returns Paulis on len(ref_x) qubits.
    """
    grp = StabilizerGroup(generators, ops[0].n if ops else None)
    k = len(ref_x)
    out = []
    for L in ops:
        a = [commutes(L, ref_z[j]) for j in range(k)]
        b = [commutes(L, ref_x[j]) for j in range(k)]
        R = PauliOperator.identity(L.n)
        for j in range(k):
            if a[j]:
                R = multiply(R, ref_x[j])
            if b[j]:
                R = multiply(R, ref_z[j])
            if a[j] and b[j]:
                R = R.with_phase(R.phase + 1)
        c = grp.relative_phase(multiply(L, R))
        if c is None:
            raise MeasurementError(f"{L} is not a logical operator of this stabilizer")
        out.append(PauliOperator.from_bits(a, b, c))
    return out


# -- transversal operations ------------------------------------------------------------

def _blocks(code, r):
    n = code.n
    N = r * n
    gens = [g.embed(N, b * n) for b in range(r) for g in code.generators]
    lx = [p.embed(N, b * n) for b in range(r) for p in code.logical_x]
    lz = [p.embed(N, b * n) for b in range(r) for p in code.logical_z]
    return gens, lx, lz


def is_valid_transversal(code: StabilizerCode, op: CliffordTableau) -> bool:
    """True iff op (on r blocks of the code) maps every generator of S^r into S^r."""
    if op.n % code.n:
        raise ValueError(f"operation on {op.n} qubits does not fit blocks of {code.n}")
    gens, _, _ = _blocks(code, op.n // code.n)
    grp = StabilizerGroup(gens, op.n)
    return all(grp.contains(op.conjugate(g)) for g in gens)


def encoded_action(code: StabilizerCode, op: CliffordTableau) -> CliffordTableau:
    """Action of a valid transversal operation on the k*r encoded qubits."""
    if not is_valid_transversal(code, op):
        raise TableauError("operation does not preserve the stabilizer")
    gens, lx, lz = _blocks(code, op.n // code.n)
    xs = read_logicals(gens, [op.conjugate(p) for p in lx], lx, lz)
    zs = read_logicals(gens, [op.conjugate(p) for p in lz], lx, lz)
    return CliffordTableau.from_images(xs, zs)


def orthogonal_group_member(m) -> bool:
    """True iff the square 0/1 matrix has orthonormal rows over GF(2)."""
    m = np.asarray(m, dtype=np.int64) % 2
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.array_equal((m @ m.T) % 2, np.eye(m.shape[0], dtype=np.int64)))


FOUR_QUBIT_ROWS = ("XXXI", "IXXX", "XIXX", "XXIX")


def four_qubit_tableau() -> CliffordTableau:
    """The four-qubit map X_i -> row_i, Z_i -> row_i with X replaced by Z."""
    return CliffordTableau.from_images(list(FOUR_QUBIT_ROWS),
                                       [r.replace("X", "Z") for r in FOUR_QUBIT_ROWS])


def four_qubit_binary_matrix():
    return [[1 if c == "X" else 0 for c in r] for r in FOUR_QUBIT_ROWS]


def _logical_of(code_x, code_z, kind):
    if kind == "X":
        return code_x
    if kind == "Z":
        return code_z
    return multiply(code_x, code_z).with_phase(multiply(code_x, code_z).phase + 1)


def block_script(code: StabilizerCode, op: CliffordTableau, ancillas, measurements):
    """Run an ancilla protocol on encoded blocks.

    ``op`` acts on r logical positions and is applied bitwise to r blocks of
    the code.  ``ancillas`` maps block index -> 'X', 'Y' or 'Z' (the block
    starts in the +1 eigenstate of that logical Pauli, applied to every
    logical qubit of the block); the other blocks hold data.
    ``measurements`` lists (block, 'X'|'Y'|'Z') logical measurements, made
    in order with the -1 branch corrected.  Returns the tableau mapping the
    input data logicals to their final operators, read in the logical basis
    of the blocks that end up holding the data (the unmeasured blocks).
    """
    r = op.n
    k = code.k
    gens, lx, lz = _blocks(code, r)
    big = transversal(op, code.n)
    data = [b for b in range(r) if b not in ancillas]
    holders = sorted(set(range(r)) - {b for b, _ in measurements})
    if len(holders) != len(data):
        raise ValueError("the protocol must leave as many unmeasured blocks as data blocks")
    pick = lambda blocks, ops: [ops[b * k + j] for b in blocks for j in range(k)]
    extra = [_logical_of(lx[b * k + j], lz[b * k + j], kind)
             for b, kind in sorted(ancillas.items()) for j in range(k)]
    state = StabilizerState(r * code.n, gens + extra, pick(data, lx), pick(data, lz))
    state.apply_tableau(big)
    for b, kind in measurements:
        for j in range(k):
            state.measure(_logical_of(lx[b * k + j], lz[b * k + j], kind), outcome=-1)
    ref_x, ref_z = pick(holders, lx), pick(holders, lz)
    xs = read_logicals(state.generators, state.logical_x, ref_x, ref_z)
    zs = read_logicals(state.generators, state.logical_z, ref_x, ref_z)
    return CliffordTableau.from_images(xs, zs)


def four_qubit_cnot_script(code: StabilizerCode):
    """Two data blocks + two ancilla blocks in logical |0>: apply the
    four-qubit map bitwise, measure logical X on both ancilla blocks, and
    return the resulting action on the 2k data logical qubits."""
    return block_script(code, four_qubit_tableau(), {2: "Z", 3: "Z"}, [(2, "X"), (3, "X")])


THREE_QUBIT_X = ("XYZ", "YXZ", "XXX")
THREE_QUBIT_Z = ("ZXY", "XZY", "ZZZ")


def three_qubit_tableau() -> CliffordTableau:
    """Three-qubit operation valid bitwise on codes that are GF(4)-linear."""
    return CliffordTableau.from_images(list(THREE_QUBIT_X), list(THREE_QUBIT_Z))


def three_qubit_script(code: StabilizerCode, kind: str):
    """Data in block 2, two ancilla blocks, apply the three-qubit operation.

    kind 'H': ancillas in logical |0>, measure logical Y on both.
    kind 'P': ancillas in logical |+>, measure logical Z on both.
    """
    prep, meas = {"H": ("Z", "Y"), "P": ("X", "Z")}[kind]
    return block_script(code, three_qubit_tableau(), {0: prep, 1: prep},
                        [(0, meas), (1, meas)])


def _expected_block_cnot(k):
    t = CliffordTableau.identity(2 * k)
    for i in range(k):
        t = t.apply_gate("CNOT", (i, k + i))
    return t


@dataclass
class FourQubitReport:
    tableau_valid: bool
    orthogonal: bool
    transversal_valid: bool
    logical_cnot: bool           # script on bare qubits gives CNOT exactly
    encoded_cnot: bool           # script on encoded blocks gives CNOT up to a Pauli frame
    encoded_cnot_exact: bool     # ... and with all signs +

    @property
    def ok(self):
        return all((self.tableau_valid, self.orthogonal, self.transversal_valid,
                    self.logical_cnot, self.encoded_cnot))


def four_qubit_universal_check(code: StabilizerCode) -> FourQubitReport:
    """Bitwise, the map sends Y to -Y (x) Y (x) Y, so logical operators with an
    odd number of Y factors pick up signs: the encoded result is CNOT up to
    a Pauli frame in general, exactly CNOT when the logicals avoid that."""
    from .constructions import trivial_code
    t = four_qubit_tableau()
    op = transversal(t, code.n)
    encoded = four_qubit_cnot_script(code)
    want = _expected_block_cnot(code.k)
    return FourQubitReport(
        tableau_valid=t.is_valid(),
        orthogonal=orthogonal_group_member(four_qubit_binary_matrix()),
        transversal_valid=is_valid_transversal(code, op),
        logical_cnot=four_qubit_cnot_script(trivial_code(1)) == _expected_block_cnot(1),
        encoded_cnot=encoded.equal_up_to_pauli(want),
        encoded_cnot_exact=encoded == want,
    )


# -- measurement scripts -------------------------------------------------------------------

def teleportation_script(rng=None):
    """Qubit 0 holds the data, qubits 1-2 a Bell pair; CNOT(0,1), measure X0, Z1.

    Returns the final state; its logicals should sit on qubit 2.
    """
    s = StabilizerState(3, ["IXX", "IZZ"], ["XII"], ["ZII"])
    s.apply_gate("CNOT", (0, 1))
    s.measure("XII", rng)
    s.measure("IZI", rng)
    return s


def measurement_gate_script(kind, rng=None):
    """Single-qubit gates from an ancilla, one CNOT and a Y measurement.

    kind 'PDG': ancilla (qubit 1) in |0>, CNOT data->ancilla, measure Y on the ancilla.
    kind 'QDG': ancilla in |+>, CNOT ancilla->data, measure Y on the ancilla.
    kind 'T':   ancilla in the +1 eigenstate of Y, CNOT ancilla->data,
                measure Y on the data; the data moves to the ancilla.
    Returns (state, data_qubit_after).
    """
    if kind == "PDG":
        s = StabilizerState(2, ["IZ"], ["XI"], ["ZI"])
        s.apply_gate("CNOT", (0, 1))
        s.measure("IY", rng)
        return s, 0
    if kind == "QDG":
        s = StabilizerState(2, ["IX"], ["XI"], ["ZI"])
        s.apply_gate("CNOT", (1, 0))
        s.measure("IY", rng)
        return s, 0
    if kind == "T":
        s = StabilizerState(2, ["IY"], ["XI"], ["ZI"])
        s.apply_gate("CNOT", (1, 0))
        s.measure("YI", rng)
        return s, 1
    raise ValueError(f"unknown script {kind!r}")


def single_qubit_action(state: StabilizerState, qubit: int) -> CliffordTableau:
    """Read the tracked logical pair as a one-qubit tableau on ``qubit``."""
    n = state.n
    ref_x = [PauliOperator.single(n, qubit, "X")]
    ref_z = [PauliOperator.single(n, qubit, "Z")]
    gens = state.generators
    xs = read_logicals(gens, state.logical_x, ref_x, ref_z)
    zs = read_logicals(gens, state.logical_z, ref_x, ref_z)
    return CliffordTableau.from_images(xs, zs)


# -- encoder ------------------------------------------------------------------------------

def encoder_circuit(code: StabilizerCode) -> Circuit:
    """Encoding network built from the standard form.

    Input: logical qubit j on qubit perm[n-k+j] (perm from the standard
    form), all other qubits in |0>.  Output: the encoded state in the
    basis given by the standard-form logical operators.

    1. fan out the X part of each logical X from its input qubit;
    2. flip any Z-type generator that came out with a minus sign;
    3. Hadamard the first r pivot qubits;
    4. for each pivot row M_i = c * sigma_i (x) M'_i fix the phase of the
       |1> branch on qubit i and apply M'_i conditioned on qubit i,
       skipping Z factors on pivot qubits not yet processed.
    """
    sf = standard_form(code)
    n, k, m, r = code.n, code.k, code.r, sf.r
    perm = sf.qubit_permutation
    circ = Circuit(n)
    if m == 0:
        return circ
    rows = [p.permute(perm) for p in sf.rows_as_paulis()]   # permuted coordinates
    xs, _ = standard_logicals(sf)
    xs = [p.permute(perm) for p in xs]

    def emit(name, *cols):
        circ.add(name, *[perm[c] for c in cols])

    for j in range(k):
        src = m + j
        for c in range(r, m):
            if (xs[j].x >> c) & 1:
                emit("CNOT", src, c)
    for t in range(r, m):
        if rows[t].phase == 2:
            emit("X", t)
    for i in range(r):
        emit("H", i)
    for i in range(r):
        row = rows[i]
        sym = row.symbol(i)
        eps = (row.phase + (1 if sym == "Y" else 0)) % 4
        fix = {0: None, 1: "P", 2: "Z", 3: "PDG"}[eps]
        if fix:
            emit(fix, i)
        for c in range(n):
            if c == i:
                continue
            s = row.symbol(c)
            if s == "I" or (c < r and c > i and s == "Z"):
                continue
            emit({"X": "CNOT", "Z": "CZ", "Y": "CY"}[s], i, c)
    return circ


def encoder_input_qubits(code: StabilizerCode):
    """Qubits on which the encoder expects logical inputs (logical 0 first)."""
    sf = standard_form(code)
    return [sf.qubit_permutation[code.r + j] for j in range(code.k)]


def decoder_by_measurement(code: StabilizerCode) -> Circuit:
    """Move each logical qubit onto a fresh ancilla (qubits n .. n+k-1).

    The ancilla picks up the logical Z eigenvalue (CNOT fan-out when the
    logical Z is a product of Z's, else a Hadamard-sandwiched controlled
    Pauli), then a logical X conditioned on the ancilla resets the block.
    """
    n, k = code.n, code.k
    circ = Circuit(n + k)
    ctrl = {"X": "CNOT", "Z": "CZ", "Y": "CY"}
    for j in range(k):
        anc = n + j
        lz, lx = code.logical_z[j], code.logical_x[j]
        if lz.x == 0 and lz.phase == 0:
            for q in range(n):
                if (lz.z >> q) & 1:
                    circ.add("CNOT", q, anc)
        else:
            circ.add("H", anc)
            for q in range(n):
                s = lz.symbol(q)
                if s != "I":
                    circ.add(ctrl[s], anc, q)
            if lz.phase == 2:
                circ.add("Z", anc)
            circ.add("H", anc)
        for q in range(n):
            s = lx.symbol(q)
            if s != "I":
                circ.add(ctrl[s], anc, q)
        if lx.phase == 2:
            circ.add("Z", anc)
    return circ


# -- synthesis ------------------------------------------------------------------------

def swap_decomposition() -> Circuit:
    return Circuit(2).add("CNOT", 0, 1).add("CNOT", 1, 0).add("CNOT", 0, 1)


def synthesize_clifford(t: CliffordTableau) -> Circuit:
    """Circuit of H, P, PDG, CNOT and Pauli gates whose tableau equals t.

    Qubit by qubit, gates on qubits >= q reduce the image of X_q to +-X_q
    and then the image of Z_q to +-Z_q; at most n^2 CNOTs are used.  The
    remaining signs are fixed with Paulis.  The output is the Pauli layer
    followed by the inverse of the reduction.
    """
    if not t.is_valid():
        raise TableauError("; ".join(t.problems()))
    n = t.n
    red: List[Gate] = []
    cur = t

    def g(name, *qs):
        nonlocal cur
        red.append(Gate(name, qs))
        cur = cur.apply_gate(name, qs)

    def to_x(q):                      # rotate the image symbol on q to X
        s = cur_sym(q)
        if s == "Z":
            g("H", q)
        elif s == "Y":
            g("P", q)

    def to_z(q):
        s = cur_sym(q)
        if s == "X":
            g("H", q)
        elif s == "Y":
            g("H", q); g("P", q); g("H", q)

    for q in range(n):
        cur_sym = lambda j: cur.x_images[q].symbol(j)
        p = cur.x_images[q]
        if p.symbol(q) == "I":
            j = next(j for j in range(q + 1, n) if p.symbol(j) != "I")
            to_x(j)
            g("CNOT", j, q)
        to_x(q)
        for j in range(q + 1, n):
            if cur.x_images[q].symbol(j) != "I":
                to_x(j)
                g("CNOT", q, j)
        cur_sym = lambda j: cur.z_images[q].symbol(j)
        if cur.z_images[q].symbol(q) == "Y":
            g("H", q); g("P", q); g("H", q)
        for j in range(q + 1, n):
            if cur.z_images[q].symbol(j) != "I":
                to_z(j)
                g("CNOT", j, q)
    out = Circuit(n)
    for q in range(n):
        if cur.x_images[q].phase == 2:
            out.add("Z", q)
        if cur.z_images[q].phase == 2:
            out.add("X", q)
    for gate in reversed(red):
        out.add(INVERSE[gate.name], *gate.qubits)
    return out
