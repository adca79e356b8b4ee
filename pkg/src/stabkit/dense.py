"""Small-n statevector oracle.

Basis index convention: qubit 0 is the most significant bit, so a vector
is the Kronecker product with qubit 0 first.  Everything here is exact
linear algebra on at most ``MAX_QUBITS`` qubits; it certifies claims that
the symplectic machinery cannot express on its own (codeword expansions,
the error-correction condition, Toffoli identities, amplitude damping,
a non-stabilizer projector) and cross-checks the tableau simulator.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .circuits import Circuit
from .pauli import PauliOperator, parse_pauli
from .stabilizer import StabilizerCode, with_standard_logicals

MAX_QUBITS = 14
TOL = 1e-10


class DenseSizeError(ValueError):
    """Register too large for dense simulation."""


class ImpossibleOutcome(ValueError):
    """A forced measurement outcome has (numerically) zero probability."""


def _check_size(n, cap=MAX_QUBITS):
    if n > cap:
        raise DenseSizeError(f"dense simulation is limited to {cap} qubits (got {n})")


# -- gates -------------------------------------------------------------------------

_S2 = 1 / np.sqrt(2)
GATES = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "P": np.diag([1, 1j]),
    "PDG": np.diag([1, -1j]),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
}
GATES["T"] = GATES["H"] @ GATES["PDG"]


def _controlled(u):
    m = np.eye(4, dtype=complex)
    m[2:, 2:] = u
    return m


GATES["CNOT"] = _controlled(GATES["X"])
GATES["CZ"] = _controlled(GATES["Z"])
GATES["CY"] = _controlled(GATES["Y"])
GATES["SWAP"] = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
GATES["TOFFOLI"] = np.eye(8, dtype=complex)[[0, 1, 2, 3, 4, 5, 7, 6]]


def apply_matrix(psi, n, u, qubits):
    """Apply a 2^m x 2^m matrix to the listed qubits (first listed = most significant)."""
    m = len(qubits)
    t = psi.reshape((2,) * n)
    t = np.moveaxis(t, list(qubits), list(range(m)))
    shape = t.shape
    t = (u @ t.reshape(2 ** m, -1)).reshape(shape)
    return np.moveaxis(t, list(range(m)), list(qubits)).reshape(-1)


def pauli_matrix(p: PauliOperator) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a Pauli (qubit 0 first in the Kronecker product)."""
    _check_size(p.n)
    m = np.array([[1]], dtype=complex)
    for q in range(p.n):
        m = np.kron(m, GATES[p.symbol(q)])
    return m * (1j ** p.phase)


def apply_pauli(psi, p: PauliOperator):
    """p |psi> without building the matrix."""
    n = p.n
    idx = np.arange(2 ** n)
    xm = sum(1 << (n - 1 - q) for q in range(n) if (p.x >> q) & 1)
    sign = np.ones(2 ** n)
    for q in range(n):
        if (p.z >> q) & 1:
            sign *= 1 - 2 * ((idx >> (n - 1 - q)) & 1)
    coeff = 1j ** (p.phase + bin(p.x & p.z).count("1"))
    out = np.empty_like(psi, dtype=complex)
    out[idx ^ xm] = coeff * sign * psi
    return out


def basis_state(n, index=0):
    _check_size(n)
    v = np.zeros(2 ** n, dtype=complex)
    v[index] = 1
    return v


def bits_to_index(bits: str) -> int:
    return int(bits, 2)


def fidelity(a, b) -> float:
    """|<a|b>| for normalized vectors (global-phase insensitive)."""
    return float(abs(np.vdot(a, b)))


def normalize(v):
    nrm = np.linalg.norm(v)
    if nrm < 1e-12:
        raise ValueError("zero vector")
    return v / nrm


def project(psi, p: PauliOperator, sign=1):
    """(I + sign * p)/2 |psi>."""
    return 0.5 * (psi + sign * apply_pauli(psi, p))


def measure(psi, p: PauliOperator, outcome=None, rng=None):
    """Projective measurement of a Hermitian Pauli; returns (outcome, state)."""
    if outcome is None:
        rng = rng or random.Random()
        plus = project(psi, p, 1)
        prob = float(np.vdot(plus, plus).real)
        outcome = 1 if rng.random() < prob else -1
    post = project(psi, p, outcome)
    prob = float(np.vdot(post, post).real)
    if prob < 1e-12:
        raise ImpossibleOutcome(f"outcome {outcome:+d} for {p} has probability {prob:.3g}")
    return outcome, post / np.sqrt(prob)


def run_circuit_dense(circuit: Circuit, psi=None, outcomes=None, rng=None):
    """Apply a circuit to a state vector (default |0...0>).

    Measurements project onto the outcome (forced from ``outcomes`` in
    order, else sampled) without any correction.  Returns (state, outcomes).
    """
    n = circuit.n
    _check_size(n)
    psi = basis_state(n) if psi is None else np.asarray(psi, dtype=complex)
    forced = list(outcomes or [])
    results = []
    for g in circuit.gates:
        if g.name == "MEASURE":
            x = z = 0
            for sym, q in zip(g.pauli, g.qubits):
                x |= (sym in "XY") << q
                z |= (sym in "ZY") << q
            out, psi = measure(psi, PauliOperator(n, x, z), forced.pop(0) if forced else None, rng)
            results.append(out)
        else:
            psi = apply_matrix(psi, n, GATES[g.name], g.qubits)
    return psi, results


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    n = circuit.n
    _check_size(n, 10)
    cols = [run_circuit_dense(circuit, basis_state(n, i))[0] for i in range(2 ** n)]
    return np.array(cols).T


# -- stabilizer states and codewords -------------------------------------------------

def stabilizer_projection(psi, generators):
    for g in generators:
        psi = project(psi, g)
    return psi


def stabilized_state(generators, n=None):
    """A normalized vector fixed by the generators (first basis state that works)."""
    gens = [parse_pauli(g) if isinstance(g, str) else g for g in generators]
    n = n or gens[0].n
    _check_size(n)
    for b in range(2 ** n):
        v = stabilizer_projection(basis_state(n, b), gens)
        if np.linalg.norm(v) > 1e-6:
            return normalize(v)
    raise ValueError("generators stabilize no state")


def logical_x_power(code, c):
    """Product of logical X_j over the set bits of c (logical 0 is the MSB)."""
    k = code.k
    p = PauliOperator.identity(code.n)
    for j in range(k):
        if (c >> (k - 1 - j)) & 1:
            p = p * code.logical_x[j]
    return p


def codeword_states(code: StabilizerCode) -> List[np.ndarray]:
    """|c> = X^c |0_L>, with |0_L> proportional to prod (I + M_i) |0...0>.

    When |0...0> has no overlap with the logical-zero state, the first
    basis state that does is used instead.
    """
    _check_size(code.n)
    zero = stabilized_state(list(code.generators) + list(code.logical_z), code.n)
    return [apply_pauli(zero, logical_x_power(code, c)) for c in range(2 ** code.k)]


def expansion(v, tol=1e-9):
    """{bitstring: amplitude} for the nonzero entries of v."""
    n = int(np.log2(len(v)))
    return {format(i, f"0{n}b"): complex(a) for i, a in enumerate(v) if abs(a) > tol}


# -- error-correction condition -------------------------------------------------------

@dataclass
class ConditionResult:
    correctable: bool
    degenerate: bool
    matrix: np.ndarray          # C_ab
    max_violation: float        # largest |<i|Ea^dag Eb|j> - C_ab delta_ij|
    min_singular_value: float


def pauli_errors(n, t):
    """All Paulis of weight <= t (identity first)."""
    out = [PauliOperator.identity(n)]
    for w in range(1, t + 1):
        for support in itertools.combinations(range(n), w):
            for kinds in itertools.product("XYZ", repeat=w):
                p = PauliOperator.identity(n)
                for q, s in zip(support, kinds):
                    p = p * PauliOperator.single(n, q, s)
                out.append(p)
    return out


def condition_matrix(states, error_vectors_fn, errors):
    """G[a, i, b, j] = <E_a psi_i | E_b psi_j>."""
    vecs = np.array([[error_vectors_fn(e, s) for s in states] for e in errors])
    flat = vecs.reshape(len(errors) * len(states), -1)
    g = flat.conj() @ flat.T
    return g.reshape(len(errors), len(states), len(errors), len(states))


def check_condition(states, errors, apply_fn=None, tol=TOL) -> ConditionResult:
    """Test <psi_i|E_a^dag E_b|psi_j> = C_ab delta_ij."""
    apply_fn = apply_fn or (lambda e, s: apply_pauli(s, e))
    g = condition_matrix(states, apply_fn, errors)
    c = g[:, 0, :, 0]
    m = len(states)
    want = np.einsum("ab,ij->aibj", c, np.eye(m))
    viol = float(np.max(np.abs(g - want))) if g.size else 0.0
    sv = np.linalg.svd(c, compute_uv=False)
    smin = float(sv[-1]) if sv.size else 0.0
    return ConditionResult(viol < tol, smin < 1e-8, c, viol, smin)


def verify_kl_condition(code: StabilizerCode, errors: Sequence[PauliOperator],
                        cap=12) -> ConditionResult:
    """Error-correction condition for the given Pauli error list on the codewords."""
    _check_size(code.n, cap)
    errors = [parse_pauli(e) if isinstance(e, str) else e for e in errors]
    return check_condition(codeword_states(code), errors)


# -- encoder / decoder certification ---------------------------------------------

def encoder_fidelity(code: StabilizerCode) -> float:
    """|tr(V_ref^dag V_enc)| / 2^k for the encoding network.

    V_enc maps each logical basis input to the network's output;
    V_ref's columns are X^c |0_L> for the standard-form logicals.
    """
    from .clifford import encoder_circuit, encoder_input_qubits
    n, k = code.n, code.k
    _check_size(n)
    circ = encoder_circuit(code)
    inputs = encoder_input_qubits(code)
    ref = codeword_states(with_standard_logicals(code))
    total = 0j
    for c in range(2 ** k):
        idx = 0
        for j in range(k):
            if (c >> (k - 1 - j)) & 1:
                idx |= 1 << (n - 1 - inputs[j])
        out, _ = run_circuit_dense(circ, basis_state(n, idx))
        total += np.vdot(ref[c], out)
    return float(abs(total)) / 2 ** k


def decoder_transfer_fidelity(code: StabilizerCode, rng=None) -> float:
    """Fidelity of moving random logical states onto the ancillas.

    Encodes a random k-qubit state, runs the decode-by-measurement network
    and compares with |0_L> (x) (input state on the ancillas).
    """
    from .clifford import decoder_by_measurement
    n, k = code.n, code.k
    _check_size(n + k)
    rng = np.random.default_rng(rng)
    amps = rng.normal(size=2 ** k) + 1j * rng.normal(size=2 ** k)
    amps /= np.linalg.norm(amps)
    words = codeword_states(code)
    enc = sum(a * w for a, w in zip(amps, words))
    psi = np.kron(enc, basis_state(k))
    out, _ = run_circuit_dense(decoder_by_measurement(code), psi)
    return fidelity(np.kron(words[0], amps), out)


def tableau_state_fidelity(circuit: Circuit, rng=None) -> float:
    """Run a Clifford circuit with measurements on the tableau simulator and
    densely (with the same outcomes), and compare the final states."""
    from .clifford import StabilizerState
    rng = rng or random.Random()
    st = StabilizerState.zero(circuit.n)
    outs = st.run(circuit, rng=rng, correct=False)
    psi, _ = run_circuit_dense(circuit, outcomes=outs)
    return fidelity(psi, stabilized_state(st.generators, circuit.n))


def random_clifford_circuit(n, depth, rng=None, measure_prob=0.1) -> Circuit:
    rng = rng or random.Random()
    c = Circuit(n)
    for _ in range(depth):
        r = rng.random()
        if r < measure_prob:
            qs = sorted(rng.sample(range(n), rng.randint(1, n)))
            c.add("MEASURE", *qs, pauli="".join(rng.choice("XYZ") for _ in qs))
        elif n > 1 and r < 0.45:
            name = rng.choice(["CNOT", "CZ", "CY", "SWAP"])
            c.add(name, *rng.sample(range(n), 2))
        else:
            c.add(rng.choice(["H", "P", "PDG", "X", "Y", "Z"]), rng.randrange(n))
    return c


# -- Toffoli identities ------------------------------------------------------------

def _op(*factors):
    """Kronecker product of 2x2 factors."""
    m = np.array([[1]], dtype=complex)
    for f in factors:
        m = np.kron(m, f)
    return m


@dataclass
class ToffoliReport:
    conjugation_ok: bool        # Toffoli maps X, Z generators as claimed
    ancilla_fixed: bool         # M_i |A> = |A> for the three operators
    b_flipped: bool             # M_3 |B> = -|B>
    sum_is_uniform: bool        # |A> + |B> is the uniform superposition
    b_is_x3_a: bool             # |B> = X_3 |A>
    teleported: bool            # ancilla protocol applies Toffoli to data

    @property
    def ok(self):
        return all(vars(self).values())


def toffoli_operators():
    """M_1, M_2, M_3 that fix the Toffoli ancilla state (qubit 3 is the target)."""
    I, X, Z = GATES["I"], GATES["X"], GATES["Z"]
    m1 = 0.5 * (_op(I, I, I) + _op(I, Z, I) + _op(I, I - Z, X)) @ _op(X, I, I)
    m2 = 0.5 * (_op(I, I, I) + _op(Z, I, I) + _op(I - Z, I, X)) @ _op(I, X, I)
    m3 = 0.5 * (_op(I, I, I) + _op(Z, I, I) + _op(I - Z, Z, I)) @ _op(I, I, Z)
    return m1, m2, m3


def toffoli_states():
    a = np.zeros(8, dtype=complex)
    a[[0b000, 0b010, 0b100, 0b111]] = 0.5
    b = np.zeros(8, dtype=complex)
    b[[0b001, 0b011, 0b101, 0b110]] = 0.5
    return a, b


def toffoli_ancilla_check(tol=1e-12, rng=None) -> ToffoliReport:
    I, X, Z = GATES["I"], GATES["X"], GATES["Z"]
    T = GATES["TOFFOLI"]
    m1, m2, m3 = toffoli_operators()
    conj = (np.allclose(T @ _op(X, I, I) @ T.conj().T, m1, atol=tol)
            and np.allclose(T @ _op(I, X, I) @ T.conj().T, m2, atol=tol)
            and np.allclose(T @ _op(I, I, Z) @ T.conj().T, m3, atol=tol)
            and all(np.allclose(T @ g @ T.conj().T, g, atol=tol)
                    for g in (_op(Z, I, I), _op(I, Z, I), _op(I, I, X))))
    a, b = toffoli_states()
    fixed = all(np.allclose(m @ a, a, atol=tol) for m in (m1, m2, m3))
    flipped = np.allclose(m3 @ b, -b, atol=tol)
    uniform = np.allclose(a + b, np.full(8, 0.5), atol=tol)
    b_x3a = np.allclose(_op(I, I, X) @ a, b, atol=tol)
    return ToffoliReport(conj, fixed, flipped, uniform, b_x3a, _toffoli_teleport(a, rng, tol))


def _toffoli_teleport(a, rng, tol):
    """Ancilla |A> on qubits 0-2, data on 3-5: CNOT 0->3, 1->4, 5->2, then
    measure Z3, Z4, X5 (+1 branch).  Qubits 0-2 should hold Toffoli|data>."""
    rng = np.random.default_rng(rng)
    data = rng.normal(size=8) + 1j * rng.normal(size=8)
    data /= np.linalg.norm(data)
    psi = np.kron(a, data)
    c = Circuit(6).add("CNOT", 0, 3).add("CNOT", 1, 4).add("CNOT", 5, 2)
    c.add("MEASURE", 3, pauli="Z").add("MEASURE", 4, pauli="Z").add("MEASURE", 5, pauli="X")
    out, _ = run_circuit_dense(c, psi, outcomes=[1, 1, 1])
    plus = np.array([1, 1]) / np.sqrt(2)
    want = np.kron(GATES["TOFFOLI"] @ data, _op(np.array([[1], [0]]), np.array([[1], [0]]),
                                               plus.reshape(2, 1)).ravel())
    return fidelity(want, out) > 1 - tol


# -- amplitude damping ------------------------------------------------------------------

def _damping_terms(n, t):
    """(A-set, B-set) error terms with at most t A factors and order <= 2t."""
    out = []
    for na in range(t + 1):
        for aset in itertools.combinations(range(n), na):
            rest = [q for q in range(n) if q not in aset]
            for nb in range((2 * t - na) // 2 + 1):
                for bset in itertools.combinations(rest, nb):
                    out.append((aset, bset))
    return out


def _apply_damping(psi, n, aset, bset):
    X, Z, I = GATES["X"], GATES["Z"], GATES["I"]
    A = X @ (I - Z)           # = [[0, 2], [0, 0]]
    B = I - Z                 # = diag(0, 2)
    for q in aset:
        psi = apply_matrix(psi, n, A, (q,))
    for q in bset:
        psi = apply_matrix(psi, n, B, (q,))
    return psi


@dataclass
class DampingReport:
    code: str
    order: int
    pairs_checked: int
    max_violation: float
    ok: bool


def amplitude_damping_check(code: StabilizerCode, t: int, tol=TOL) -> DampingReport:
    """Error-correction condition to order eps^(2t) for amplitude damping.

    Each jump contributes A = X(I - Z) (order eps), each no-jump correction
    B = I - Z (order eps^2).  For every pair of terms E, F with at most t
    jumps each and total order <= 2t, <psi_i|E^dag F|psi_j> must be
    proportional to delta_ij.
    """
    n = code.n
    _check_size(n, 12)
    words = codeword_states(code)
    terms = _damping_terms(n, t)
    order = {tm: len(tm[0]) + 2 * len(tm[1]) for tm in terms}
    vecs = {tm: [_apply_damping(w, n, *tm) for w in words] for tm in terms}
    m = len(words)
    worst = 0.0
    pairs = 0
    for e in terms:
        for f in terms:
            if order[e] + order[f] > 2 * t:
                continue
            pairs += 1
            g = np.array([[np.vdot(vecs[e][i], vecs[f][j]) for j in range(m)]
                          for i in range(m)])
            worst = max(worst, float(np.max(np.abs(g - g[0, 0] * np.eye(m)))))
    return DampingReport(code.name or "", t, pairs, worst, worst < tol)


def damping_pair(code: StabilizerCode, e_jumps, f_jumps) -> np.ndarray:
    """Matrix <psi_i| A_E^dag A_F |psi_j> for two sets of jump qubits."""
    words = codeword_states(code)
    ve = [_apply_damping(w, code.n, tuple(e_jumps), ()) for w in words]
    vf = [_apply_damping(w, code.n, tuple(f_jumps), ()) for w in words]
    return np.array([[np.vdot(a, b) for b in vf] for a in ve])


# -- six-state projector -------------------------------------------------------------------

PROJECTOR_TERMS = (
    (3, "IIIII", False),
    (1, "IZYYZ", True),
    (1, "IXZZX", True),
    (-1, "IYXXY", True),
    (2, "ZXYYX", True),
    (-2, "ZZZZZ", False),
)


def _cyclic(s):
    return [s[-i:] + s[:-i] if i else s for i in range(len(s))]


def nonadditive_projector() -> np.ndarray:
    """The 32 x 32 operator (1/16)(sum of weighted cyclic Pauli terms)."""
    p = np.zeros((32, 32), dtype=complex)
    for coeff, s, cyc in PROJECTOR_TERMS:
        for t in (_cyclic(s) if cyc else [s]):
            p += coeff * pauli_matrix(parse_pauli(t))
    return p / 16


@dataclass
class ProjectorReport:
    trace: float
    idempotency_error: float      # max |P^2 - P|
    hermiticity_error: float
    orthogonality_error: float    # max over single-qubit Paulis of max |P (s P s)|
    ok: bool


def nonadditive_projector_check(tol=1e-12) -> ProjectorReport:
    p = nonadditive_projector()
    tr = float(np.trace(p).real)
    idem = float(np.max(np.abs(p @ p - p)))
    herm = float(np.max(np.abs(p - p.conj().T)))
    orth = 0.0
    for q in range(5):
        for s in "XYZ":
            m = pauli_matrix(PauliOperator.single(5, q, s))
            orth = max(orth, float(np.max(np.abs(p @ (m @ p @ m)))))
    ok = abs(tr - 6) < tol and idem < tol and herm < tol and orth < tol
    return ProjectorReport(tr, idem, herm, orth, ok)
