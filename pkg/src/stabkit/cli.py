"""Command-line interface: ``stabkit <subcommand> [options]``.

Every subcommand accepts ``--format {text,csv,structured}``; structured
output is a JSON document carrying ``schema_version``.

Exit status: 0 success, 2 malformed input, 3 resource or feasibility
limit, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import analysis, capacity, clifford, dense, threshold
from .circuits import CircuitParseError, format_circuit, parse_circuit
from .constructions import catalog, catalog_entries
from .pauli import PauliParseError, format_pauli, parse_pauli
from .stabilizer import CodeFileError, loads_code, dumps_code, code_to_dict, validate

SCHEMA_VERSION = 1

OK, INPUT_ERROR, RESOURCE_ERROR, INTERNAL_ERROR = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message, status=INPUT_ERROR):
        super().__init__(message)
        self.status = status


# Demo circuit for ``simulate`` without --circuit: teleport qubit 0 to qubit 2.
TELEPORT_DEMO = """QUBITS 3
H 0
H 1
CNOT 1 2
CNOT 0 1
H 0
MEASURE Z 0
MEASURE Z 1
"""


# -- output helpers --------------------------------------------------------------

def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _structured(command, payload):
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": payload}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _parse_params(items):
    out = {}
    for item in items or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise CliError(f"parameter {item!r} must look like name=value")
        out[key] = val
    return out


def _load_code(args):
    if getattr(args, "code", None):
        try:
            code = loads_code(_read(args.code))
        except CodeFileError as exc:
            raise CliError(f"{args.code}: {exc}") from None
        rep = validate(code)
        if not rep.ok:
            raise CliError(f"{args.code}: invalid code: {'; '.join(rep.problems)}")
        return code
    if getattr(args, "name", None):
        return _catalog_code(args.name, _parse_params(getattr(args, "params", None)))
    raise CliError("give --code FILE or --name NAME")


def _catalog_code(name, params):
    try:
        return catalog(name, **params)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _parse_grid(text):
    parts = text.split(":")
    try:
        a, b, step = (float(x) for x in parts)
    except ValueError:
        raise CliError(f"grid {text!r} must be start:stop:step") from None
    if step <= 0 or b < a:
        raise CliError("grid needs step > 0 and stop >= start")
    count = int(round((b - a) / step)) + 1
    return [round(a + i * step, 12) for i in range(count) if a + i * step <= b + 1e-12]


# -- subcommands ---------------------------------------------------------------------

def cmd_catalog(args):
    if args.list:
        entries = catalog_entries()
        rows = [[e.name, e.n if e.n is not None else "", e.k if e.k is not None else "",
                 e.d if e.d is not None else "", " ".join(e.params), e.note] for e in entries]
        if args.format == "csv":
            return _csv(["name", "n", "k", "d", "params", "provenance"], rows)
        if args.format == "structured":
            return _structured("catalog", [
                {"name": e.name, "n": e.n, "k": e.k, "d": e.d, "params": list(e.params),
                 "provenance": e.note} for e in entries])
        lines = []
        for e in entries:
            nkd = f"[{e.n},{e.k},{e.d}]" if e.n is not None else f"({', '.join(e.params)}=...)"
            lines.append(f"{e.name:<12} {nkd:<12} {e.note}")
        return "\n".join(lines) + "\n"
    if not args.name:
        raise CliError("give --list or --name NAME")
    code = _catalog_code(args.name, _parse_params(args.params))
    if args.format == "structured":
        return _structured("catalog", code_to_dict(code))
    if args.format == "csv":
        rows = [["generator", i, format_pauli(g)] for i, g in enumerate(code.generators)]
        rows += [["logical_x", i, format_pauli(g)] for i, g in enumerate(code.logical_x)]
        rows += [["logical_z", i, format_pauli(g)] for i, g in enumerate(code.logical_z)]
        return _csv(["role", "index", "pauli"], rows)
    return dumps_code(code)


def cmd_analyze(args):
    code = _load_code(args)
    rep = analysis.distance(code, cap=args.cap, max_cost=args.max_cost)
    try:
        A, B = analysis.weight_enumerators(code)
        S = analysis.shadow_enumerator(code)
        skipped = None
    except analysis.CostError as exc:        # distance is still reported
        A = B = S = None
        skipped = str(exc)
    d = rep.distance if rep.exact else None
    bounds = []
    if d is not None:
        bounds = [analysis.hamming_bound(code.n, code.k, (d - 1) // 2),
                  analysis.kl_bound(code.n, code.k, d),
                  analysis.gv_bound(code.n, code.k, d)]
    payload = {
        "name": code.name, "n": code.n, "k": code.k,
        "distance": rep.distance, "distance_exact": rep.exact,
        "degenerate": rep.degenerate,
        "witness": format_pauli(rep.witness) if rep.witness else None,
        "degeneracy_witness": (format_pauli(rep.degeneracy_witness)
                               if rep.degeneracy_witness else None),
        "A": A, "B": B, "S": S,
        "shadow_equals_normalizer": None if skipped else S == B,
        "enumerators_skipped": skipped,
        "bounds": [{"name": b.name, "param": b.param, "satisfied": b.satisfied,
                    "equality": b.equality, "margin": b.margin} for b in bounds],
    }
    if args.format == "structured":
        return _structured("analyze", payload)
    if args.format == "csv":
        if skipped:
            raise CliError(f"enumerators unavailable: {skipped}", RESOURCE_ERROR)
        return analysis.enumerators_csv(A, B, S)
    dtxt = str(rep.distance) if rep.exact else f">= {rep.distance} (cap {rep.cap})"
    lines = [f"code: {code.name or '-'} [{code.n},{code.k}]", f"distance: {dtxt}",
             f"degenerate: {rep.degenerate}"]
    if rep.witness:
        lines.append(f"witness: {format_pauli(rep.witness)}")
    if rep.degeneracy_witness:
        lines.append(f"degeneracy witness: {format_pauli(rep.degeneracy_witness)}")
    if skipped:
        lines.append(f"enumerators skipped: {skipped}")
    else:
        lines += [f"A: {A}", f"B: {B}", f"S: {S}"]
    if not skipped and S == B:
        lines.append("shadow enumerator equals normalizer enumerator (S == B)")
    for b in bounds:
        lines.append(f"{b.name} bound: satisfied={b.satisfied} equality={b.equality} "
                     f"margin={b.margin}")
    return "\n".join(lines) + "\n"


def cmd_encode(args):
    code = _load_code(args)
    circ = clifford.encoder_circuit(code)
    inputs = clifford.encoder_input_qubits(code)
    bound = (code.k + code.r) * (code.n - code.k)
    fid = None
    if not args.no_certify:
        if code.n > dense.MAX_QUBITS:
            raise CliError(f"dense certification needs n <= {dense.MAX_QUBITS} "
                           f"(use --no-certify)", RESOURCE_ERROR)
        fid = dense.encoder_fidelity(code)
        if fid < 1 - 1e-10:
            raise CliError(f"encoder certification failed: fidelity {fid:.12f}",
                           INTERNAL_ERROR)
    payload = {"n": code.n, "k": code.k, "input_qubits": list(inputs),
               "two_qubit_gates": circ.two_qubit_count(),
               "one_qubit_gates": circ.one_qubit_count(), "gate_bound": bound,
               "fidelity": fid, "circuit": format_circuit(circ)}
    if args.format == "structured":
        return _structured("encode", payload)
    if args.format == "csv":
        return _csv(["n", "k", "two_qubit_gates", "one_qubit_gates", "gate_bound", "fidelity"],
                    [[code.n, code.k, payload["two_qubit_gates"],
                      payload["one_qubit_gates"], bound, "" if fid is None else f"{fid:.12f}"]])
    head = [f"# inputs on qubits {' '.join(map(str, inputs))}",
            f"# two-qubit gates {payload['two_qubit_gates']} (bound {bound})"]
    if fid is not None:
        head.append(f"# dense certification fidelity {fid:.12f}")
    return "\n".join(head) + "\n" + payload["circuit"]


def _parse_tableau_file(path):
    text = _read(path)
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        try:
            parse_pauli(body)
        except PauliParseError as exc:
            lead = len(body) - len(body.lstrip())
            col = (exc.position or 0) + lead + 1
            raise CliError(f"{path}: line {lineno}, column {col}: {exc}") from None
    try:
        return clifford.parse_tableau(text)
    except clifford.TableauError as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_synth(args):
    t = _parse_tableau_file(args.tableau)
    circ = clifford.synthesize_clifford(t)
    if clifford.CliffordTableau.from_circuit(circ) != t:
        raise CliError("synthesized circuit does not reproduce the tableau", INTERNAL_ERROR)
    payload = {"n": t.n, "two_qubit_gates": circ.two_qubit_count(),
               "one_qubit_gates": circ.one_qubit_count(), "circuit": format_circuit(circ)}
    if args.format == "structured":
        return _structured("synth", payload)
    if args.format == "csv":
        return _csv(["index", "gate", "qubits"],
                    [[i, g.name, " ".join(map(str, g.qubits))] for i, g in enumerate(circ)])
    return payload["circuit"]


def cmd_simulate(args):
    text = _read(args.circuit) if args.circuit else TELEPORT_DEMO
    try:
        circ = parse_circuit(text)
    except CircuitParseError as exc:
        raise CliError(f"{args.circuit or 'demo'}: {exc}") from None
    if not circ.is_clifford:
        raise CliError("TOFFOLI is outside the stabilizer simulator", RESOURCE_ERROR)
    if args.code or args.name:
        code = _load_code(args)
        if code.n != circ.n:
            raise CliError(f"circuit acts on {circ.n} qubits but the code has {code.n}")
        state = clifford.StabilizerState.from_code(code)
    else:
        state = clifford.StabilizerState.zero(circ.n)
    rng = random.Random(args.seed)
    try:
        outcomes = state.run(circ, rng, correct=False)
    except clifford.MeasurementError as exc:
        raise CliError(str(exc), RESOURCE_ERROR) from None
    payload = {"seed": args.seed, "n": circ.n, "outcomes": outcomes,
               "generators": [format_pauli(g, plus=True) for g in state.generators],
               "logical_x": [format_pauli(g, plus=True) for g in state.logical_x],
               "logical_z": [format_pauli(g, plus=True) for g in state.logical_z]}
    if args.format == "structured":
        return _structured("simulate", payload)
    if args.format == "csv":
        return _csv(["measurement", "outcome"], [[i, o] for i, o in enumerate(outcomes)])
    lines = [f"seed {args.seed}", "outcomes " + " ".join(f"{o:+d}" for o in outcomes),
             "stabilizer:"] + ["  " + g for g in payload["generators"]]
    for name in ("logical_x", "logical_z"):
        if payload[name]:
            lines.append(name.replace("_", " ") + ":")
            lines += ["  " + g for g in payload[name]]
    return "\n".join(lines) + "\n"


def cmd_capacity(args):
    if args.curves:
        try:
            table = capacity.capacity_curves(_parse_grid(args.grid))
        except ValueError as exc:
            raise CliError(str(exc)) from None
        if args.format == "structured":
            rows = list(csv.DictReader(io.StringIO(table)))
            return _structured("capacity", {"curves": rows})
        return table
    ps = [float(x) for x in args.p]
    if any(not 0 <= p <= 1 for p in ps):
        raise CliError("p must lie in [0, 1]")
    results = []
    if args.channel == "erasure":
        if args.n is None or args.k is None:
            raise CliError("erasure Monte Carlo needs --n and --k")
        if not 0 <= args.k <= args.n:
            raise CliError("need 0 <= k <= n")
        for p in ps:
            results.append(capacity.erasure_monte_carlo(args.n, args.k, p, args.trials,
                                                        args.seed, args.jobs))
    else:
        code = _load_code(args)
        if code.n > args.max_n:
            raise CliError(f"lookup decoder table for n = {code.n} exceeds --max-n",
                           RESOURCE_ERROR)
        for p in ps:
            results.append(capacity.depolarizing_monte_carlo(code, p, args.trials,
                                                             args.seed, args.jobs))
    if args.format == "structured":
        return _structured("capacity", {"channel": args.channel,
                                        "results": [r.to_dict() for r in results]})
    if args.format == "csv":
        return capacity.results_csv(results)
    return "\n".join(f"{args.channel} n={r.n} k={r.k} p={r.p:g}: {r.failures}/{r.trials} "
                     f"failures, rate {r.failure_rate:.5g} +- {r.stderr:.2g}"
                     for r in results) + "\n"


def cmd_threshold(args):
    modes = list(threshold.MODES) if args.mode == "all" else [args.mode]
    try:
        rows = [threshold.ThresholdSummary(m, threshold.solve_threshold(m, n_levels=args.levels),
                                           threshold.MODE_NOTES[m]) for m in modes]
    except threshold.ThresholdConfigError as exc:
        raise CliError(str(exc), RESOURCE_ERROR) from None
    if args.format == "structured":
        return _structured("threshold", [{"mode": r.mode, "threshold": r.threshold,
                                          "note": r.note} for r in rows])
    if args.format == "csv":
        return threshold.threshold_summary_csv(rows)
    return "\n".join(f"{r.mode}: {r.threshold:.6e}  ({r.note})" for r in rows) + "\n"


# -- parser ----------------------------------------------------------------------------

def _code_args(p):
    p.add_argument("--code", help="code file (JSON)")
    p.add_argument("--name", help="catalog code name")
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE",
                   help="family parameters for --name, e.g. j=4")


def build_parser():
    parser = argparse.ArgumentParser(prog="stabkit", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "csv", "structured"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[fmt], help="list or emit catalog codes")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--name")
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("analyze", parents=[fmt], help="distance, enumerators and bounds")
    _code_args(p)
    p.add_argument("--cap", type=int, help="largest weight searched for the distance")
    p.add_argument("--max-cost", type=float, default=2e7,
                   help="largest number of Paulis the distance search may check")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("encode", parents=[fmt], help="encoding circuit with dense certification")
    _code_args(p)
    p.add_argument("--no-certify", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("synth", parents=[fmt], help="synthesize a Clifford from a tableau file")
    p.add_argument("--tableau", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("simulate", parents=[fmt], help="run a circuit on a stabilizer state")
    p.add_argument("--circuit", help="circuit file (default: built-in teleportation demo)")
    _code_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("capacity", parents=[fmt], help="rate curves and Monte Carlo runs")
    p.add_argument("--curves", action="store_true", help="emit asymptotic rate curves")
    p.add_argument("--grid", default="0:0.5:0.01", help="start:stop:step for --curves")
    p.add_argument("--channel", choices=("erasure", "depolarizing"), default="erasure")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    _code_args(p)
    p.add_argument("--p", nargs="+", default=["0.1"])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-n", type=int, default=20)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("threshold", parents=[fmt], help="threshold of a recursion mode")
    p.add_argument("--mode", choices=list(threshold.MODES) + ["all"], default="gates_only")
    p.add_argument("--levels", type=int, default=20)
    p.set_defaults(func=cmd_threshold)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    try:
        out = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except (analysis.CostError, dense.DenseSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCE_ERROR
    except (PauliParseError, CircuitParseError, CodeFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except Exception as exc:  # invariant violations surface here
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    sys.stdout.write(out)
    return OK
