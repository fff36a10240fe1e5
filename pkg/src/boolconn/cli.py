"""Command-line interface: JSON reports on stdout, log lines on stderr."""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import clones, exports, gadgets
from .classify import classify_set
from .errors import BoolConnError, CapExceeded, InputError
from .formula import (CnfFormula, RelationSet, format_formula, format_relation_set, formula_to_relation,
                      parse_formula, parse_relation_set, satisfiable)
from .graph import components, diameter
from .horn import HornStructure, to_dot as horn_dot
from .limits import override
from .relation import relation, vec_to_str
from .solvers import CONN_METHODS, dispatch_conn, dispatch_st_conn

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Run:
    def __init__(self, args: argparse.Namespace, argv: Sequence[str]):
        self.args = args
        self.argv = list(argv)
        self.inputs: dict[str, str] = {}

    def log(self, msg: str) -> None:
        if not self.args.quiet:
            print(msg, file=sys.stderr)

    def read(self, path: str) -> str:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}", None, path) from None
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return data.decode("utf-8")

    def formula(self, path: str) -> CnfFormula:
        base = Path(path).parent

        def loader(name: str) -> str:
            return self.read(str(base / name))

        return parse_formula(self.read(path), source=path, loader=loader)

    def report(self, result: Any, method: str | None = None) -> dict:
        return {"command": self.argv, "inputs": dict(sorted(self.inputs.items())),
                "method": method, "result": result}


def _emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _bits(text: str, n: int, what: str) -> str:
    if len(text) != n or any(ch not in "01" for ch in text):
        raise InputError(f"{what} must be a 0/1 string of length {n}")
    return text


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(run: _Run) -> int:
    rels = parse_relation_set(run.read(run.args.file), run.args.file)
    _emit(run.report(classify_set(rels).as_dict(), "closure-properties"))
    return EXIT_OK


def cmd_conn(run: _Run) -> int:
    phi = run.formula(run.args.file)
    res = dispatch_conn(phi, brute=run.args.brute, method=run.args.method)
    _emit(run.report(res.as_dict(), res.method))
    return EXIT_OK if res.connected else EXIT_NO


def cmd_stconn(run: _Run) -> int:
    phi = run.formula(run.args.file)
    m = len(phi.free_vars)
    s, t = _bits(run.args.s, m, "--s"), _bits(run.args.t, m, "--t")
    res = dispatch_st_conn(phi, s, t, brute=run.args.brute)
    payload = res.as_dict()
    payload.update({"s": s, "t": t})
    _emit(run.report(payload, res.method))
    return EXIT_OK if res.connected else EXIT_NO


def cmd_diameter(run: _Run) -> int:
    phi = run.formula(run.args.file)
    rel = formula_to_relation(phi)
    _emit(run.report({"problem": "diameter", "diameter": diameter(rel), "solutions": len(rel)}, "brute"))
    return EXIT_OK


def cmd_components(run: _Run) -> int:
    phi = run.formula(run.args.file)
    rel = formula_to_relation(phi)
    part = components(rel)
    n = rel.arity
    result = {"problem": "components", "count": part.count,
              "minima": [vec_to_str(v, n) for v in part.minima()],
              "sizes": [int(x) for x in part.sizes()]}
    _emit(run.report(result, "brute"))
    return EXIT_OK


def cmd_clone(run: _Run) -> int:
    B = clones.parse_functions(run.read(run.args.file), run.args.file)
    _emit(run.report(clones.clone_report(B), "truth-table"))
    return EXIT_OK


def cmd_bf_conn(run: _Run) -> int:
    B = clones.parse_functions(run.read(run.args.functions), run.args.functions)
    if run.args.circuit:
        C = clones.parse_circuit(run.read(run.args.circuit), run.args.circuit)
        phi = None
        table = clones.circuit_table(B, C, run.args.vars)
        n = run.args.vars or C.num_vars
    else:
        text = run.args.formula if run.args.formula else run.read(run.args.formula_file)
        phi = clones.parse_bformula(text, B)
        n = run.args.vars or clones.formula_vars(phi)
    if (run.args.s is None) != (run.args.t is None):
        raise InputError("--s and --t must be given together")
    if phi is None:
        from .graph import distance, is_connected
        from .relation import Relation
        rel = Relation.from_table(n, table)
        if run.args.s is not None:
            d = distance(rel, int(_bits(run.args.s, n, "--s"), 2), int(_bits(run.args.t, n, "--t"), 2))
            res = clones.BfResult(d != float("inf"), "brute", None if d == float("inf") else int(d))
        else:
            res = clones.BfResult(is_connected(rel), "brute", details={"components": components(rel).count})
    elif run.args.s is not None:
        res = clones.st_conn_bformula(B, phi, _bits(run.args.s, n, "--s"), _bits(run.args.t, n, "--t"), n)
    else:
        res = clones.conn_bformula(B, phi, n)
    payload = res.as_dict()
    payload["clone"] = str(clones.clone_of(list(B.values())))
    _emit(run.report(payload, res.method))
    return EXIT_OK if res.connected else EXIT_NO


def _write_outputs(run: _Run, stem: str, formula_text: str, extras: dict[str, str], provenance: dict) -> dict:
    out_dir = run.args.out_dir
    written = []
    if out_dir:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, text in {f"{stem}.cnfs": formula_text, **extras}.items():
            (d / name).write_text(text)
            written.append(name)
        (d / f"{stem}.provenance.json").write_text(json.dumps(provenance, sort_keys=True, indent=2) + "\n")
        written.append(f"{stem}.provenance.json")
    return {"formula": formula_text, "relations": extras, "provenance": provenance, "written": sorted(written)}


def cmd_witness_diameter(run: _Run) -> int:
    n = run.args.n
    phi = gadgets.diameter_witness(n)
    s, t = gadgets.diameter_witness_endpoints(n)
    provenance: dict[str, Any] = {"construction": "recursive doubling of an induced path",
                                  "variables": n, "clauses": len(phi.constraints),
                                  "s": vec_to_str(s, n), "t": vec_to_str(t, n),
                                  "path_length": 2 ** (n // 2 + 1) - 2}
    if n <= run.args.verify_up_to:
        rel = formula_to_relation(phi)
        from .graph import distance
        part = components(rel)
        provenance["verified"] = {"components": part.count, "solutions": len(rel),
                                  "distance": int(distance(rel, s, t)), "diameter": diameter(rel)}
    result = _write_outputs(run, f"diameter_{n}", format_formula(phi, use=["s3.rel"]),
                            {"s3.rel": format_relation_set(gadgets.S3)}, provenance)
    _emit(run.report(result, "construction"))
    return EXIT_OK


def _isolating_formula(rels: RelationSet, polarity: int):
    from .errors import PreconditionError
    for name, rel in rels.items():
        try:
            return name, gadgets.find_isolating_relation(rel, polarity, name)
        except PreconditionError:
            continue
    raise PreconditionError(f"no relation yields a {polarity}-isolating formula")


def cmd_reduce(run: _Run) -> int:
    mode = run.args.mode
    phi = run.formula(run.args.file)
    if mode == "conn-hardness":
        out = gadgets.build_conn_hardness_instance(phi)
        provenance = {"construction": "satisfiability of positive 3-clauses and negative 2-clauses to M",
                      "input_satisfiable": satisfiable(phi) is not None, "variables": out.num_vars}
        rels = RelationSet.of({"M": out.relations["M"]})
        result = _write_outputs(run, "conn_hardness", format_formula(out, use=["m.rel"]),
                                {"m.rel": format_relation_set(rels)}, provenance)
    elif mode == "another-sat":
        if run.args.s is None:
            raise InputError("--s is required for another-sat")
        s = _bits(run.args.s, phi.num_vars, "--s")
        neq = gadgets.search_expression(phi.used_relations(), relation("01", "10"),
                                        max_aux=run.args.max_aux, constants=phi.constants)
        if neq is None:
            from .errors import PreconditionError
            raise PreconditionError("no expression for x != y within the search bounds")
        out = gadgets.build_another_sat_reduction(phi, s, neq)
        provenance = {"construction": "conjunction with per-variable inequality expressions",
                      "inequality_expression": [str(c) for c in neq.formula.constraints],
                      "inequality_aux": neq.num_aux,
                      "verification": gadgets.verify_structural_expressibility(neq).as_dict()}
        result = _write_outputs(run, "another_sat", format_formula(out, use=["relations.rel"]),
                                {"relations.rel": format_relation_set(out.relations)}, provenance)
    else:  # drop-constants
        rels = phi.used_relations()
        n0, iso0 = _isolating_formula(rels, 0)
        n1, iso1 = _isolating_formula(rels, 1)
        rep = gadgets.replace_constants(phi, iso0.formula, iso1.formula)
        provenance = {"construction": "constants simulated by isolated solutions",
                      "zero_isolating": {"relation": n0, "recipe": list(iso0.recipe),
                                         "solutions": iso0.relation.to_strings()},
                      "one_isolating": {"relation": n1, "recipe": list(iso1.recipe),
                                        "solutions": iso1.relation.to_strings()},
                      "appended_block": vec_to_str(rep.block, rep.block_vars)}
        result = _write_outputs(run, "constant_free", format_formula(rep.formula, use=["relations.rel"]),
                                {"relations.rel": format_relation_set(rep.formula.relations)}, provenance)
    _emit(run.report(result, mode))
    return EXIT_OK


def cmd_export(run: _Run) -> int:
    path = run.args.file
    if path.endswith(".rel"):
        rels = parse_relation_set(run.read(path), path)
        name = run.args.relation or rels.names()[0]
        rel = rels[name]
        phi = None
    else:
        phi = run.formula(path)
        rel = formula_to_relation(phi)
    fmt = run.args.format
    if run.args.horn:
        if phi is None:
            raise InputError("--horn needs a formula file")
        text = horn_dot(HornStructure.from_formula(phi))
    elif fmt == "dot":
        text = exports.to_dot(rel)
    elif fmt == "svg":
        text = exports.to_svg(rel)
    else:
        text = exports.to_json(rel)
    if run.args.out:
        Path(run.args.out).write_text(text)
        _emit(run.report({"written": run.args.out, "format": fmt}, "export"))
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress log output on stderr")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized fallbacks (none are used by default)")
    common.add_argument("--cap-enumeration", type=int, default=24)
    common.add_argument("--cap-diameter", type=int, default=20)
    common.add_argument("--cap-projection", type=int, default=16)
    common.add_argument("--cap-shannon", type=int, default=20)

    p = _Parser(prog="boolconn", description="Connectivity of Boolean solution spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="classify a relation set (.rel)")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    for name, func, help_ in (("conn", cmd_conn, "connectivity of a formula (.cnfs); exit 1 if disconnected"),
                              ("stconn", cmd_stconn, "st-connectivity; exit 1 if disconnected"),
                              ("diameter", cmd_diameter, "largest component diameter"),
                              ("components", cmd_components, "connected components")):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.add_argument("file")
        c.add_argument("--brute", action="store_true", help="force the exhaustive oracle")
        if name == "conn":
            c.add_argument("--method", choices=CONN_METHODS, help="pin one decision procedure")
        if name == "stconn":
            c.add_argument("--s", required=True)
            c.add_argument("--t", required=True)
        c.set_defaults(func=func)

    c = sub.add_parser("clone", parents=[common], help="clone of a function set (.fn)")
    c.add_argument("file")
    c.set_defaults(func=cmd_clone)

    c = sub.add_parser("bf-conn", parents=[common], help="connectivity of a B-formula or B-circuit; exit 1 if disconnected")
    c.add_argument("functions", help=".fn file defining B")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula", help="s-expression")
    g.add_argument("--formula-file")
    g.add_argument("--circuit", help="circuit file")
    c.add_argument("--vars", type=int, help="number of variables (default: largest index used)")
    c.add_argument("--s")
    c.add_argument("--t")
    c.set_defaults(func=cmd_bf_conn)

    c = sub.add_parser("witness-diameter", parents=[common], help="3-CNF formula whose solution graph is a long path")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--verify-up-to", type=int, default=12, help="BFS-verify when n is at most this")
    c.add_argument("--out-dir")
    c.set_defaults(func=cmd_witness_diameter)

    c = sub.add_parser("reduce", parents=[common], help="gadget reductions emitting .cnfs plus provenance")
    c.add_argument("file")
    c.add_argument("--mode", required=True, choices=("conn-hardness", "another-sat", "drop-constants"))
    c.add_argument("--s", help="known solution (another-sat)")
    c.add_argument("--max-aux", type=int, default=2, help="auxiliary bound for the inequality search")
    c.add_argument("--out-dir")
    c.set_defaults(func=cmd_reduce)

    c = sub.add_parser("export", parents=[common], help="render a solution graph")
    c.add_argument("file", help=".cnfs formula or .rel relation set")
    c.add_argument("--format", choices=("dot", "json", "svg"), default="json")
    c.add_argument("--relation", help="relation name for .rel input")
    c.add_argument("--horn", action="store_true", help="draw the Horn implication hypergraph instead (DOT)")
    c.add_argument("--out")
    c.set_defaults(func=cmd_export)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    r = _Run(args, argv)
    start = time.perf_counter()
    caps = dict(enumeration=args.cap_enumeration, diameter=args.cap_diameter,
                projection=args.cap_projection, shannon=args.cap_shannon)
    try:
        with override(**caps):
            code = args.func(r)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (BoolConnError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    r.log(f"{args.command}: exit {code}, wall time {time.perf_counter() - start:.3f}s")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
