"""Gate-list circuits and their text format.

One gate per line::

    QUBITS 3
    H 0
    CNOT 0 1
    MEASURE XZ 0 2
    TOFFOLI 0 1 2

Blank lines and text after ``#`` are ignored.  ``QUBITS`` is optional;
without it n is one more than the largest qubit index used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

ONE_QUBIT = ("H", "P", "PDG", "X", "Y", "Z")
TWO_QUBIT = ("CNOT", "CZ", "CY", "SWAP")
THREE_QUBIT = ("TOFFOLI",)
INVERSE = {"H": "H", "P": "PDG", "PDG": "P", "X": "X", "Y": "Y", "Z": "Z",
           "CNOT": "CNOT", "CZ": "CZ", "CY": "CY", "SWAP": "SWAP", "TOFFOLI": "TOFFOLI"}


class CircuitParseError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: Tuple[int, ...]
    pauli: Optional[str] = None     # for MEASURE: one symbol per listed qubit

    def __str__(self):
        if self.name == "MEASURE":
            return f"MEASURE {self.pauli} " + " ".join(map(str, self.qubits))
        return self.name + " " + " ".join(map(str, self.qubits))

    @property
    def is_clifford(self):
        return self.name != "TOFFOLI"

    @property
    def arity(self):
        return len(self.qubits)


@dataclass
class Circuit:
    n: int
    gates: List[Gate] = field(default_factory=list)

    def add(self, name, *qubits, pauli=None):
        g = Gate(name, tuple(int(q) for q in qubits), pauli)
        _check_gate(g, self.n)
        self.gates.append(g)
        return self

    def extend(self, other: "Circuit"):
        if other.n > self.n:
            raise ValueError("appended circuit is wider")
        self.gates.extend(other.gates)
        return self

    def inverse(self) -> "Circuit":
        if any(g.name == "MEASURE" for g in self.gates):
            raise ValueError("measurements have no inverse")
        return Circuit(self.n, [Gate(INVERSE[g.name], g.qubits) for g in reversed(self.gates)])

    def remap(self, mapping, n=None) -> "Circuit":
        """Relabel qubit q as mapping[q]."""
        out = Circuit(n if n is not None else self.n)
        for g in self.gates:
            out.gates.append(Gate(g.name, tuple(mapping[q] for q in g.qubits), g.pauli))
        return out

    def count(self, arity=None):
        return sum(1 for g in self.gates if arity is None or g.arity == arity)

    def two_qubit_count(self):
        return sum(1 for g in self.gates if g.name in TWO_QUBIT)

    def one_qubit_count(self):
        return sum(1 for g in self.gates if g.name in ONE_QUBIT)

    @property
    def is_clifford(self):
        return all(g.is_clifford for g in self.gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def _check_gate(g: Gate, n: int, line=None):
    want = {**{k: 1 for k in ONE_QUBIT}, **{k: 2 for k in TWO_QUBIT},
            **{k: 3 for k in THREE_QUBIT}}
    if g.name == "MEASURE":
        if not g.pauli or len(g.pauli) != len(g.qubits):
            raise CircuitParseError("MEASURE needs one Pauli symbol per qubit", line)
        if any(c not in "IXYZ" for c in g.pauli):
            raise CircuitParseError(f"bad Pauli {g.pauli!r}", line)
    elif g.name not in want:
        raise CircuitParseError(f"unknown gate {g.name!r}", line)
    elif len(g.qubits) != want[g.name]:
        raise CircuitParseError(f"{g.name} takes {want[g.name]} qubit(s)", line)
    if len(set(g.qubits)) != len(g.qubits):
        raise CircuitParseError(f"{g.name} repeats a qubit", line)
    for q in g.qubits:
        if q < 0 or q >= n:
            raise CircuitParseError(f"qubit {q} out of range for n={n}", line)


def parse_circuit(text: str) -> Circuit:
    n = None
    gates = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        head = parts[0].upper()
        if head == "QUBITS":
            if len(parts) != 2 or not parts[1].isdigit():
                raise CircuitParseError("QUBITS takes one integer", lineno)
            n = int(parts[1])
            continue
        pauli = None
        args = parts[1:]
        if head == "MEASURE":
            if not args:
                raise CircuitParseError("MEASURE needs a Pauli", lineno)
            pauli, args = args[0].upper(), args[1:]
        try:
            qubits = tuple(int(a) for a in args)
        except ValueError:
            raise CircuitParseError(f"qubit indices must be integers: {body!r}", lineno) from None
        gates.append(Gate(head, qubits, pauli))
        lines.append(lineno)
    if n is None:
        n = 1 + max((q for g in gates for q in g.qubits), default=0)
    for g, ln in zip(gates, lines):
        _check_gate(g, n, ln)
    return Circuit(n, gates)


def format_circuit(c: Circuit, header=True) -> str:
    out = [f"QUBITS {c.n}"] if header else []
    out += [str(g) for g in c.gates]
    return "\n".join(out) + "\n"
