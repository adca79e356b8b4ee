"""Named codes and generic ways of building new codes from old ones."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import gf2
from .pauli import PauliOperator, commutes, multiply, parse_pauli, product
from .stabilizer import (CodeError, StabilizerCode, find_logicals, validate)


# -- generic constructions ---------------------------------------------------

def css(parity_check_p, parity_check_q, n=None, name=None):
    """CSS code: Z-type generators from rows of P, X-type from rows of Q.

    Rows are 0/1 sequences or packed ints (bit q = qubit q).  Every row of
    P must be orthogonal to every row of Q.
    """
    def pack(rows):
        return [r if isinstance(r, int) else sum(1 << i for i, b in enumerate(r) if b)
                for r in rows]
    if n is None:
        for rows in (parity_check_p, parity_check_q):
            if len(rows) and not isinstance(rows[0], int):
                n = len(rows[0])
    if n is None:
        raise CodeError("cannot infer n; pass n explicitly")
    P, Q = pack(parity_check_p), pack(parity_check_q)
    for a, pr in enumerate(P):
        for b, qr in enumerate(Q):
            if gf2.dot(pr, qr):
                raise CodeError(f"row {a} of P is not orthogonal to row {b} of Q")
    gens = [PauliOperator(n, v, 0) for v in gf2.basis(Q)]
    gens += [PauliOperator(n, 0, v) for v in gf2.basis(P)]
    k = n - len(gens)
    xs, zs = find_logicals(n, gens) if k else ([], [])
    return StabilizerCode(n, k, gens, xs, zs, name=name)


def add_qubit(code: StabilizerCode) -> StabilizerCode:
    """[n,k,d] -> degenerate [n+1,k,d]: append a qubit stabilized by X."""
    pad = PauliOperator.identity(1)
    ext = [g.tensor(pad) for g in code.generators]
    ext.append(PauliOperator.identity(code.n).tensor(parse_pauli("X")))
    return StabilizerCode(code.n + 1, code.k, ext,
                          [p.tensor(pad) for p in code.logical_x],
                          [p.tensor(pad) for p in code.logical_z],
                          name=f"{code.name or 'code'}+1",
                          claimed_distance=code.claimed_distance)


def _drop(p: PauliOperator, q: int) -> PauliOperator:
    return p.restrict([i for i in range(p.n) if i != q])


def _remove_at(code, q):
    gens = list(code.generators)
    sym = [g.symbol(q) for g in gens]
    a = next((i for i, s in enumerate(sym) if s != "I"), None)
    if a is None:
        return None
    b = next((i for i, s in enumerate(sym) if s not in ("I", sym[a])), None)
    if b is None:
        return None
    ga, gb = gens[a], gens[b]
    candidates = [ga, gb, multiply(ga, gb)]
    x_end = next(g for g in candidates if g.symbol(q) == "X")
    z_end = next(g for g in candidates if g.symbol(q) == "Z")
    fix = {"I": None, "X": x_end, "Z": z_end, "Y": multiply(x_end, z_end)}

    def clear(p):
        f = fix[p.symbol(q)]
        return p if f is None else multiply(p, f)

    rest = [_drop(clear(g), q) for i, g in enumerate(gens) if i not in (a, b)]
    lx = [_drop(clear(p), q) for p in code.logical_x] + [_drop(z_end, q)]
    lz = [_drop(clear(p), q) for p in code.logical_z] + [_drop(x_end, q)]
    d = code.claimed_distance
    return StabilizerCode(code.n - 1, code.k + 1, rest, lx, lz,
                          name=f"{code.name or 'code'}-1",
                          claimed_distance=None if d is None else d - 1)


def remove_qubit(code: StabilizerCode, qubit: Optional[int] = None) -> StabilizerCode:
    """[n,k,d] -> [n-1,k+1,>=d-1] by dropping a qubit and two generators.

    Two generators with different non-identity Paulis on the qubit are
    combined so one ends in X and one in Z; the rest are cleared on that
    qubit.  The restricted Z-ender becomes the new logical X and the
    restricted X-ender the new logical Z.  Without ``qubit`` the last qubit
    is tried first, then the others from the end.
    """
    if code.n < 2:
        raise CodeError("need at least two qubits")
    order = [qubit] if qubit is not None else list(range(code.n - 1, -1, -1))
    for q in order:
        out = _remove_at(code, q)
        if out is not None:
            return out
    raise CodeError("no qubit carries two different generator Paulis; cannot remove")


def _prefix(code, r):
    if isinstance(r, int):
        return r
    r = [parse_pauli(p) if isinstance(p, str) else p for p in r]
    if r != code.generators[:len(r)]:
        raise CodeError("subgroup generators must be a prefix of the code's generator list")
    return len(r)


def paste(s1: StabilizerCode, r1, s2: StabilizerCode, r2, name=None) -> StabilizerCode:
    """Paste two codes along subgroups R1 < S1, R2 < S2.

    ``r1``/``r2`` are the number of leading generators spanning R_i (or the
    generator lists themselves).  Requires l1 - k1 == l2 - k2 where
    l_i = n_i - |R_i|.
    """
    c1, c2 = _prefix(s1, r1), _prefix(s2, r2)
    l1, l2 = s1.n - c1, s2.n - c2
    if l1 - s1.k != l2 - s2.k:
        raise CodeError(f"tail lengths differ: {l1 - s1.k} vs {l2 - s2.k}")
    if l1 <= s1.k or l2 <= s2.k:
        raise CodeError("R_i must be a proper subgroup of S_i")
    i1, i2 = PauliOperator.identity(s1.n), PauliOperator.identity(s2.n)
    gens = [g.tensor(i2) for g in s1.generators[:c1]]
    gens += [i1.tensor(g) for g in s2.generators[:c2]]
    gens += [a.tensor(b) for a, b in zip(s1.generators[c1:], s2.generators[c2:])]
    n = s1.n + s2.n
    k = n - len(gens)
    xs, zs = find_logicals(n, gens) if k else ([], [])
    return StabilizerCode(n, k, gens, xs, zs, name=name)


def _encode_pauli(p: PauliOperator, inner: StabilizerCode) -> PauliOperator:
    """Replace each single-qubit factor of p by the inner code's logical."""
    lx, lz = inner.logical_x[0], inner.logical_z[0]
    ly = multiply(lx, lz).with_phase(multiply(lx, lz).phase + 1)   # i Xbar Zbar
    table = {"I": PauliOperator.identity(inner.n), "X": lx, "Z": lz, "Y": ly}
    out = None
    for q in range(p.n):
        f = table[p.symbol(q)]
        out = f if out is None else out.tensor(f)
    return out.with_phase(out.phase + p.phase)


def concatenate(outer: StabilizerCode, inner: StabilizerCode, name=None) -> StabilizerCode:
    """Encode every qubit of ``outer`` in ``inner`` (which must have k = 1)."""
    if inner.k != 1:
        raise CodeError("only single-qubit inner codes are supported")
    if not inner.logical_x:
        raise CodeError("inner code needs logical operators")
    n1, n2 = outer.n, inner.n
    n = n1 * n2
    gens = []
    for b in range(n1):
        gens += [g.embed(n, b * n2) for g in inner.generators]
    gens += [_encode_pauli(g, inner) for g in outer.generators]
    d = None
    if outer.claimed_distance and inner.claimed_distance:
        d = outer.claimed_distance * inner.claimed_distance
    return StabilizerCode(n, outer.k, gens,
                          [_encode_pauli(p, inner) for p in outer.logical_x],
                          [_encode_pauli(p, inner) for p in outer.logical_z],
                          name=name, claimed_distance=d)


def trivial_code(n=1):
    """The code with no generators: every qubit is a logical qubit."""
    xs = [PauliOperator.single(n, q, "X") for q in range(n)]
    zs = [PauliOperator.single(n, q, "Z") for q in range(n)]
    return StabilizerCode(n, n, [], xs, zs, name=f"trivial{n}", claimed_distance=1)


# -- 2^j families ---------------------------------------------------------------

def _bit(v, r, j):
    """r-th bit of the j-bit word v, r = 1 being the most significant."""
    return (v >> (j - r)) & 1


def sigma(j, i):
    """Linear bijection on j-bit words used by the distance-3 family.

    Defined on basis words: 1 -> all ones, 2^m -> 2^(m-1); for odd j the
    top basis word maps to 2^(j-1) | (2^(j-2) - 1) instead.
    """
    if j < 2:
        raise ValueError("sigma needs j >= 2")
    images = [(1 << j) - 1] + [1 << (m - 1) for m in range(1, j)]
    if j % 2 == 1:
        images[j - 1] = (1 << (j - 1)) | ((1 << (j - 2)) - 1)
    out = 0
    for m in range(j):
        if (i >> m) & 1:
            out ^= images[m]
    return out


def _family_rows(j):
    n = 1 << j
    rows = [PauliOperator(n, (1 << n) - 1, 0), PauliOperator(n, 0, (1 << n) - 1)]
    for r in range(1, j + 1):
        x = sum(_bit(sigma(j, i), r, j) << i for i in range(n))
        z = sum(_bit(i, r, j) << i for i in range(n))
        rows.append(PauliOperator(n, x, z))
    return rows


def _k_set(j):
    n = 1 << j
    if j % 2 == 0:
        return [1 << l for l in range(1, j)] + [0, n - 1]
    return [1 << l for l in range(1, j - 1)] + [0, (1 << (j - 1)) + 1, n - 2]


def _family_logicals(j, gens):
    """X_a X_i' E and Z_i' E' with E, E' products of Z's from a spanning set."""
    n = 1 << j
    a = 1
    K = _k_set(j)
    syn_rows = [sum(commutes(g, PauliOperator.single(n, l, "Z")) << t
                    for t, g in enumerate(gens)) for l in K]
    elim = gf2.Eliminator()
    for v in syn_rows:
        elim.add(v)

    def z_fix(p):
        s = sum(commutes(g, p) << t for t, g in enumerate(gens))
        mask = elim.express(s)
        if mask is None:
            raise CodeError("spanning set does not reach this syndrome")
        zbits = sum(1 << K[t] for t in range(len(K)) if (mask >> t) & 1)
        return multiply(p, PauliOperator(n, 0, zbits))

    xs, zs = [], []
    for i in range(n):
        if i == a or i in K:
            continue
        xs.append(z_fix(PauliOperator(n, (1 << a) | (1 << i), 0)))
        zs.append(z_fix(PauliOperator.single(n, i, "Z")))
    return xs, zs


def family_2j(j):
    """[2^j, 2^j - j - 2, 3] code."""
    if j < 3:
        raise ValueError("family_2j needs j >= 3")
    gens = _family_rows(j)
    xs, zs = _family_logicals(j, gens)
    n = 1 << j
    return StabilizerCode(n, n - j - 2, gens, xs, zs, name=f"family2j({j})",
                          claimed_distance=3)


def _hadamard_all(p):
    return PauliOperator(p.n, p.z, p.x, 0)


def family_2j_d4(j):
    """[2^j, 2^j - 2j - 2, 4] code: the distance-3 family plus its X/Z swapped rows."""
    if j < 3:
        raise ValueError("family_2j_d4 needs j >= 3")
    base = _family_rows(j)
    gens = base + [_hadamard_all(g) for g in base[2:]]
    n = 1 << j
    k = n - 2 * j - 2
    xs, zs = find_logicals(n, gens) if k else ([], [])
    return StabilizerCode(n, k, gens, xs, zs, name=f"family2j_d4({j})", claimed_distance=4)


def perfect_code(j):
    """[(4^j - 1)/3, (4^j - 1)/3 - 2j, 3] code meeting the quantum Hamming bound."""
    if j < 2:
        raise ValueError("perfect_code needs j >= 2")
    if j == 2:
        return catalog("five")
    s1 = family_2j(2 * j - 2)
    s2 = perfect_code(j - 1)
    out = paste(s1, 2, s2, 0, name=f"perfect({j})")
    out.claimed_distance = 3
    return out


def dist2(n):
    """[n, n-2, 2] code with generators X^n and Z^n (n even)."""
    if n < 2 or n % 2:
        raise ValueError("dist2 needs an even n >= 2")
    full = (1 << n) - 1
    gens = [PauliOperator(n, full, 0), PauliOperator(n, 0, full)]
    xs = [PauliOperator(n, 1 | (1 << i), 0) for i in range(1, n - 1)]
    zs = [PauliOperator(n, 0, (1 << i) | (1 << (n - 1))) for i in range(1, n - 1)]
    return StabilizerCode(n, n - 2, gens, xs, zs, name=f"dist2({n})", claimed_distance=2)


# -- catalog --------------------------------------------------------------------

_FIXED = {
    "five": dict(
        generators=["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        logical_x=["XXXXX"], logical_z=["ZZZZZ"], d=3,
        note="[5,1,3] code, smallest single-error-correcting code"),
    "shor9": dict(
        generators=["ZZIIIIIII", "ZIZIIIIII", "IIIZZIIII", "IIIZIZIII",
                    "IIIIIIZZI", "IIIIIIZIZ", "XXXXXXIII", "XXXIIIXXX"],
        logical_x=["ZZZZZZZZZ"], logical_z=["XXXXXXXXX"], d=3,
        note="[9,1,3] repetition-of-repetition code (degenerate)"),
    "steane": dict(
        generators=["XXXXIII", "XXIIXXI", "XIXIXIX", "ZZZZIII", "ZZIIZZI", "ZIZIZIZ"],
        logical_x=["IIIIXXX"], logical_z=["IIIIZZZ"], d=3,
        note="[7,1,3] CSS code from the Hamming code"),
    "eight": dict(
        generators=["XXXXXXXX", "ZZZZZZZZ", "IXIXYZYZ", "IXZYIXZY", "IYXZXZIY"],
        logical_x=["XXIIIZIZ", "XIXZIIZI", "XIIZXZII"],
        logical_z=["IZIZIZIZ", "IIZZIIZZ", "IIIIZZZZ"], d=3,
        note="[8,3,3] code"),
    "422": dict(
        generators=["XZZX", "YXXY"],
        logical_x=["-XIYY", "XIXZ"], logical_z=["-YZYI", "IXZZ"], d=2,
        note="[4,2,2] code obtained by removing a qubit of the five-qubit code"),
    "16_10_3": dict(
        generators=["XXXXXXXXXXXXXXXX", "ZZZZZZZZZZZZZZZZ", "IXIXIXIXZYZYZYZY",
                    "IXIXZYZYXIXIYZYZ", "IXZYXIYZIXZYXIYZ", "IYXZIYXZIYXZIYXZ"],
        d=3, note="[16,10,3] member of the distance-3 2^j family"),
    "16_6_4": dict(
        generators=["XXXXXXXXXXXXXXXX", "ZZZZZZZZZZZZZZZZ", "IXIXIXIXZYZYZYZY",
                    "IXIXZYZYXIXIYZYZ", "IXZYXIYZIXZYXIYZ", "IYXZIYXZIYXZIYXZ",
                    "IZIZIZIZXYXYXYXY", "IZIZXYXYZIZIYXYX", "IZXYZIYXIZXYZIYX",
                    "IYZXIYZXIYZXIYZX"],
        d=4, note="[16,6,4] member of the distance-4 2^j family"),
    "8_0_4": dict(
        generators=["XXXXXXXX", "ZZZZZZZZ", "IXIXYZYZ", "IXZYIXZY", "IYXZXZIY",
                    "IZIZYXYX", "IZXYIZXY", "IYZXZXIY"],
        d=4, note="[8,0,4] stabilizer state"),
    "11_1_5": dict(
        generators=["ZZZZZZIIIII", "XXXXXXIIIII", "IIIZXYYYYXZ", "IIIXYZZZZYX",
                    "ZYXIIIZYXII", "XZYIIIXZYII", "IIIZYXXYZII", "IIIXZYZXYII",
                    "ZXYIIIZZZXY", "YZXIIIXXXYZ"],
        logical_x=["IIIIIIXXXXX"], logical_z=["IIIIIIZZZZZ"], d=5,
        note="[11,1,5] code (last row corrected; see ELEVEN_QUBIT_AS_PRINTED)"),
    "xz7": dict(
        generators=["ZZZZZZZ", "YYYYIII", "YYIIYYI", "YIYIYIY"],
        logical_x=["XXIIIIZ", "XIXIIZI", "XIIZXII"],
        logical_z=["IZIZIZI", "IIZZIIZ", "IIIIZZZ"], d=2,
        note="[7,3] code correcting one X or one Z error"),
    "amp4": dict(
        generators=["XXXX", "ZZII", "IIZZ"],
        logical_x=["XXII"], logical_z=["ZIZI"], d=2,
        note="[4,1] code correcting one amplitude-damping error"),
}


# The [11,1,5] table as usually printed.  Its last row makes X0 X5 X6 a
# logical operator (distance 3); replacing that row's tail on qubits 6..10
# by the product of the last two printed tails restores distance 5.
ELEVEN_QUBIT_AS_PRINTED = (
    "ZZZZZZIIIII", "XXXXXXIIIII", "IIIZXYYYYXZ", "IIIXYZZZZYX", "ZYXIIIZYXII",
    "XZYIIIXZYII", "IIIZYXXYZII", "IIIXZYZXYII", "ZXYIIIZZZXY", "YZXIIIYYYZX")


def _fixed(name):
    entry = _FIXED[name]
    gens = [parse_pauli(g) for g in entry["generators"]]
    n = gens[0].n
    xs = [parse_pauli(p) for p in entry.get("logical_x", [])]
    zs = [parse_pauli(p) for p in entry.get("logical_z", [])]
    k = n - len(gens)
    if k and not xs:
        xs, zs = find_logicals(n, gens)
    return StabilizerCode(n, k, gens, xs, zs, name=name, claimed_distance=entry["d"])


def _thirteen():
    code = paste(catalog("eight"), 2, catalog("five"), 1, name="13_7_3")
    code.claimed_distance = 3
    return code


def _twentyfive():
    five = catalog("five")
    return concatenate(five, five, name="25_1_9")


@dataclass
class CatalogEntry:
    name: str
    n: Optional[int]
    k: Optional[int]
    d: Optional[int]
    note: str
    params: tuple = ()


_DERIVED = {
    "13_7_3": (_thirteen, (13, 7, 3), "[13,7,3] code pasted from the eight- and five-qubit codes"),
    "25_1_9": (_twentyfive, (25, 1, 9), "five-qubit code concatenated with itself"),
}

_FAMILIES: dict = {
    "dist2": (dist2, "n", "[n, n-2, 2] code for even n"),
    "family2j": (family_2j, "j", "[2^j, 2^j-j-2, 3] family, j >= 3"),
    "family2j_d4": (family_2j_d4, "j", "[2^j, 2^j-2j-2, 4] family, j >= 3"),
    "perfect": (perfect_code, "j", "[(4^j-1)/3, (4^j-1)/3-2j, 3] perfect codes, j >= 2"),
}


def catalog_entries():
    out = []
    for name, entry in _FIXED.items():
        g = parse_pauli(entry["generators"][0])
        out.append(CatalogEntry(name, g.n, g.n - len(entry["generators"]), entry["d"],
                                entry["note"]))
    for name, (_, (n, k, d), note) in _DERIVED.items():
        out.append(CatalogEntry(name, n, k, d, note))
    for name, (_, p, note) in _FAMILIES.items():
        out.append(CatalogEntry(name, None, None, None, note, (p,)))
    return out


def catalog_names():
    return [e.name for e in catalog_entries()]


def catalog(name, **params) -> StabilizerCode:
    """Build a named code; families take their parameter as a keyword (n= or j=)."""
    if name in _FIXED:
        return _fixed(name)
    if name in _DERIVED:
        return _DERIVED[name][0]()
    if name in _FAMILIES:
        fn, pname, _ = _FAMILIES[name]
        if pname not in params:
            raise ValueError(f"{name} needs parameter {pname}")
        return fn(int(params[pname]))
    raise KeyError(f"unknown code {name!r}; known: {', '.join(catalog_names())}")


def fixed_catalog_codes():
    """Every parameter-free catalog code."""
    return [catalog(n) for n in list(_FIXED) + list(_DERIVED)]
