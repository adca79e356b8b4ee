"""n-qubit Pauli operators in the binary symplectic representation.

A Pauli is stored as two integer bitsets ``x`` and ``z`` (bit q <-> qubit q)
plus a phase exponent ``phase`` so that the operator is

    i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}

with P_q = I, X, Z, Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1) and the
Hermitian convention Y = i X Z.  Phase 0 therefore means "as printed".

In text form qubit 0 is the leftmost symbol, e.g. ``"-XZZXI"``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class DimensionError(ValueError):
    """Raised when operands act on different numbers of qubits."""


class PauliParseError(ValueError):
    """Raised for malformed Pauli text; ``position`` is the 0-based offset."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


def popcount(v: int) -> int:
    return bin(v).count("1")


_PREFIXES = (("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0))
_PHASE_TEXT = {0: "", 1: "i", 2: "-", 3: "-i"}
_SYMBOLS = "IXZY"  # index = x | (z << 1)


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a Pauli needs at least one qubit")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit rows longer than n")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -----------------------------------------------------
    @classmethod
    def identity(cls, n):
        return cls(n, 0, 0, 0)

    @classmethod
    def single(cls, n, qubit, kind, phase=0):
        """Single-qubit Pauli ``kind`` in {'X','Y','Z','I'} on ``qubit``."""
        if not 0 <= qubit < n:
            raise IndexError(f"qubit {qubit} out of range for n={n}")
        b = 1 << qubit
        xb = b if kind in "XY" else 0
        zb = b if kind in "ZY" else 0
        return cls(n, xb, zb, phase)

    @classmethod
    def from_bits(cls, x_bits, z_bits, phase=0):
        """Build from two 0/1 sequences (qubit 0 first)."""
        if len(x_bits) != len(z_bits):
            raise DimensionError("x and z rows differ in length")
        x = sum(1 << q for q, b in enumerate(x_bits) if b)
        z = sum(1 << q for q, b in enumerate(z_bits) if b)
        return cls(len(x_bits), x, z, phase)

    @classmethod
    def from_symplectic(cls, n, v, phase=0):
        """Inverse of :meth:`symplectic`: low n bits are x, high n bits are z."""
        mask = (1 << n) - 1
        return cls(n, v & mask, (v >> n) & mask, phase)

    # -- views ------------------------------------------------------------
    @property
    def x_bits(self):
        return [(self.x >> q) & 1 for q in range(self.n)]

    @property
    def z_bits(self):
        return [(self.z >> q) & 1 for q in range(self.n)]

    @property
    def symplectic(self) -> int:
        """Packed (x | z) row as one 2n-bit integer (x in the low half)."""
        return self.x | (self.z << self.n)

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def is_hermitian(self):
        return self.phase % 2 == 0

    @property
    def sign(self):
        """+1/-1 for Hermitian operators; raises for anti-Hermitian ones."""
        if self.phase % 2:
            raise ValueError("operator is not Hermitian")
        return 1 if self.phase == 0 else -1

    def weight(self) -> int:
        return popcount(self.x | self.z)

    def symbol(self, q):
        return _SYMBOLS[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]

    def unsigned(self):
        return PauliOperator(self.n, self.x, self.z, 0)

    def with_phase(self, phase):
        return PauliOperator(self.n, self.x, self.z, phase)

    def __neg__(self):
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return format_pauli(self)

    def __repr__(self):
        return f"PauliOperator({format_pauli(self)!r})"

    # -- embedding --------------------------------------------------------
    def tensor(self, other):
        """self (x) other, with self on the lower-index qubits."""
        return PauliOperator(self.n + other.n,
                             self.x | (other.x << self.n),
                             self.z | (other.z << self.n),
                             self.phase + other.phase)

    def embed(self, n_total, offset):
        """Place this operator on qubits offset..offset+n-1 of n_total."""
        if offset < 0 or offset + self.n > n_total:
            raise DimensionError("embedding does not fit")
        return PauliOperator(n_total, self.x << offset, self.z << offset, self.phase)

    def restrict(self, qubits):
        """Sub-operator on the listed qubits (phase kept)."""
        x = z = 0
        for i, q in enumerate(qubits):
            x |= ((self.x >> q) & 1) << i
            z |= ((self.z >> q) & 1) << i
        return PauliOperator(len(qubits), x, z, self.phase)

    def permute(self, perm):
        """Qubit q of the result is qubit perm[q] of self."""
        return self.restrict(perm)


def _check_n(p, q):
    if p.n != q.n:
        raise DimensionError(f"Paulis on {p.n} and {q.n} qubits")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product p*q including the i**k phase.

    With Y = iXZ each factor is i^(x z) X^x Z^z; moving Z^z1 past X^x2
    costs (-1)^(z1.x2), and re-expressing X^x Z^z as Y costs i^-(x z).
    """
    _check_n(p, q)
    x3, z3 = p.x ^ q.x, p.z ^ q.z
    k = (p.phase + q.phase + popcount(p.x & p.z) + popcount(q.x & q.z)
         + 2 * popcount(p.z & q.x) - popcount(x3 & z3))
    return PauliOperator(p.n, x3, z3, k % 4)


def product(paulis, n=None):
    """Ordered product of an iterable of Paulis (identity if empty)."""
    acc = None
    for p in paulis:
        acc = p if acc is None else multiply(acc, p)
    if acc is None:
        if n is None:
            raise ValueError("empty product needs n")
        return PauliOperator.identity(n)
    return acc


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    _check_n(p, q)
    return (popcount(p.x & q.z) + popcount(p.z & q.x)) & 1


def commutes(p: PauliOperator, q: PauliOperator) -> int:
    """0 if p and q commute, 1 if they anticommute."""
    return symplectic_product(p, q)


def weight(p: PauliOperator) -> int:
    return p.weight()


# -- text form --------------------------------------------------------------

def parse_pauli(text: str) -> PauliOperator:
    """Parse e.g. ``"XZZXI"``, ``"-YY"``, ``"-iZ"`` (qubit 0 leftmost)."""
    s = text.strip()
    phase = 0
    body = s
    for pre, ph in _PREFIXES:
        if s.startswith(pre):
            phase, body = ph, s[len(pre):]
            break
    offset = len(s) - len(body)
    if not body:
        raise PauliParseError(f"empty Pauli string {text!r}", offset)
    x = z = 0
    for q, ch in enumerate(body):
        c = ch.upper()
        if c not in _SYMBOLS:
            raise PauliParseError(f"unknown Pauli symbol {ch!r} at position {offset + q}",
                                  offset + q)
        idx = _SYMBOLS.index(c)
        x |= (idx & 1) << q
        z |= (idx >> 1) << q
    return PauliOperator(len(body), x, z, phase)


def format_pauli(p: PauliOperator, plus=False) -> str:
    head = _PHASE_TEXT[p.phase]
    if plus and p.phase == 0:
        head = "+"
    return head + "".join(p.symbol(q) for q in range(p.n))


# -- GF(4) view ---------------------------------------------------------------

# GF(4) elements encoded as 0, 1, 2 = omega, 3 = omega^2; addition is XOR.
GF4_SYMBOLS = ("0", "1", "w", "w2")
_GF4_OF = {"I": 0, "X": 1, "Z": 2, "Y": 3}
_PAULI_OF = {v: k for k, v in _GF4_OF.items()}


@dataclass(frozen=True)
class GF4Vector:
    entries: tuple
    phase_dropped: bool = False

    def __add__(self, other):
        if len(self.entries) != len(other.entries):
            raise DimensionError("GF(4) vectors differ in length")
        return GF4Vector(tuple(a ^ b for a, b in zip(self.entries, other.entries)))

    def __str__(self):
        return "(" + ", ".join(GF4_SYMBOLS[e] for e in self.entries) + ")"


def to_gf4(p: PauliOperator) -> GF4Vector:
    """X -> 1, Z -> omega, Y -> omega^2; the overall phase is dropped."""
    ent = tuple(_GF4_OF[p.symbol(q)] for q in range(p.n))
    return GF4Vector(ent, phase_dropped=p.phase != 0)


def from_gf4(v: GF4Vector) -> PauliOperator:
    return parse_pauli("".join(_PAULI_OF[e] for e in v.entries))


def random_pauli(n, rng=None, with_phase=True):
    rng = rng or random.Random()
    return PauliOperator(n, rng.getrandbits(n), rng.getrandbits(n),
                         rng.randrange(4) if with_phase else 0)
