"""
Command-line entry point.

Exit codes: 0 verified, 1 verification failed, 2 bad input,
3 a proved statement was contradicted (implementation bug or a genuine
mathematical event).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from . import groups as gr
from .analysis import (averaged_frankl, frankl_brute_force, has_left_modular_maximal_chain,
                       is_comodernistic, is_dually_semimodular, left_modular_elements)
from .certificates import (InternalCheckFailed, PreconditionViolated, build_certificate,
                           build_certificate_generalized, certificate_problem, certify_lattice)
from .enumeration import enumerate_lattices, scan_frankl
from .lattice import LatticeError, coatoms, join_irreducibles, parse, serialize
from .subgroups import (CrossCheckFailed, GroupFranklReport, build_subgroup_lattice,
                        certify_interval, frankl_full, verify_complemented,
                        verify_solvable_intervals)

SCHEMA_VERSION = 1

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CRITICAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, **record}, indent=2) + "\n")
        return
    flat = {k: _flat(v) for k, v in record.items()}
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["schema_version", *flat])
        writer.writerow([SCHEMA_VERSION, *flat.values()])
        out.write(buf.getvalue())
        return
    width = max(map(len, flat), default=0)
    for key, value in flat.items():
        out.write(f"{key.ljust(width)}  {value}\n")


def _flat(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(str(_flat(v)) for v in value)
    if isinstance(value, dict):
        return " ".join(f"{k}={_flat(v)}" for k, v in value.items())
    return str(value)


def _mapping(m: dict) -> str:
    return "{" + ", ".join(f"{k}↦{v}" for k, v in sorted(m.items())) + "}"


def _read_lattice(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        return parse(text)
    except LatticeError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_group(source):
    try:
        return gr.load_group(source)
    except gr.GroupError as exc:
        raise InputError(f"{source}: {exc}") from None


def _subgroup_record(G, H):
    if H is None:
        return None
    return list(H.elements)


def _group_report_record(G, SL, report: GroupFranklReport, emit_certificate: bool) -> dict:
    record = {
        "group": G.name,
        "order": G.n,
        "lattice_size": report.lattice_size,
        "satisfied": report.satisfied,
        "critical": report.critical,
        "path": report.group_path.value,
        "certification_path": report.certification_path.value,
        "witness": report.witness,
        "witness_subgroup": _subgroup_record(G, report.witness_subgroup),
        "upper_interval_size": report.upper_interval_size,
        "normal_subgroup": _subgroup_record(G, report.normal_subgroup_used),
        "generator_pair": list(report.generator_pair) if report.generator_pair else None,
    }
    if emit_certificate and report.certificate is not None:
        record["certificate"] = report.certificate.to_dict()
    return record


def _exit_for(report) -> int:
    if getattr(report, "critical", False):
        return EXIT_CRITICAL
    return EXIT_OK if report.satisfied else EXIT_FAILED


# -- lattice commands --------------------------------------------------------

def cmd_lattice_check(args, out):
    L = _read_lattice(args.file)
    if L.n < 2:
        raise InputError("Frankl's condition needs at least two elements")
    brute = frankl_brute_force(L)
    try:
        certified = certify_lattice(L)
    except InternalCheckFailed as exc:
        print(f"critical: certificate construction failed: {exc}", file=sys.stderr)
        return EXIT_CRITICAL
    record = {
        "lattice_size": L.n,
        "satisfied": brute.satisfied,
        "witness": brute.witness,
        "upper_interval_size": brute.upper_interval_size,
        "certification_path": certified.certification_path.value,
        "certified_witness": certified.witness,
    }
    if args.emit_certificate and certified.certificate is not None:
        record["certificate"] = certified.certificate.to_dict()
    _emit(record, args.format, out)
    if not brute.satisfied:
        print("Frankl counterexample: no join-irreducible has a small up-set", file=sys.stderr)
    return EXIT_OK if brute.satisfied else EXIT_FAILED


def cmd_lattice_certify(args, out):
    L = _read_lattice(args.file)
    for name in ("m", "x", "y"):
        if not 0 <= getattr(args, name) < L.n:
            raise InputError(f"--{name} {getattr(args, name)} is out of range")
    build = build_certificate_generalized if args.generalized else build_certificate
    try:
        cert = build(L, args.m, args.x, args.y)
    except PreconditionViolated as exc:
        raise InputError(str(exc)) from None
    except InternalCheckFailed as exc:
        print(f"critical: {exc}", file=sys.stderr)
        return EXIT_CRITICAL
    problem = certificate_problem(L, cert)
    if args.format == "table":
        out.write(f"witness = {cert.witness}\n")
        out.write(f"partner = {cert.partner}\n")
        out.write(f"modular_element = {cert.modular_element}\n")
        out.write(f"phi1 = {_mapping(cert.phi1)}\n")
        out.write(f"phi2 = {_mapping(cert.phi2)}\n")
        out.write(f"upper_interval_size = {L.up_size(cert.witness)}\n")
        out.write(f"lattice_size = {L.n}\n")
        out.write(f"verified = {'true' if problem is None else 'false: ' + problem}\n")
    else:
        record = {**cert.to_dict(), "upper_interval_size": L.up_size(cert.witness),
                  "lattice_size": L.n, "verified": problem is None}
        _emit(record, args.format, out)
    return EXIT_OK if problem is None else EXIT_CRITICAL


def cmd_lattice_props(args, out):
    L = _read_lattice(args.file)
    irreducibles = join_irreducibles(L)
    chain = has_left_modular_maximal_chain(L)
    record = {
        "lattice_size": L.n,
        "join_irreducibles": irreducibles,
        "coatoms": coatoms(L) if L.n >= 2 else [],
        "left_modular_elements": left_modular_elements(L),
        "dually_semimodular": is_dually_semimodular(L),
        "left_modular_chain": chain,
        "comodernistic": is_comodernistic(L),
    }
    if irreducibles:
        average, ok = averaged_frankl(L)
        record["averaged_up_set"] = str(average)
        record["averaged_satisfied"] = ok
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_lattice_enumerate(args, out):
    if args.emit_files:
        directory = Path(args.emit_files)
        directory.mkdir(parents=True, exist_ok=True)
    count = 0
    for i, L in enumerate(enumerate_lattices(args.n)):
        count += 1
        if args.emit_files:
            (directory / f"lattice-{args.n}-{i:05d}.lat").write_text(serialize(L))
    if not args.scan:
        if args.format == "table":
            out.write(f"{count} lattices\n")
        else:
            _emit({"n": args.n, "lattices": count}, args.format, out)
        return EXIT_OK
    summary = scan_frankl(args.n, n_min=args.n, jobs=args.jobs)
    bad = len(summary.counterexamples)
    if args.format == "table":
        out.write(f"{count} lattices, {bad} counterexamples\n")
        for path, c in sorted(summary.paths.items()):
            out.write(f"  {path}: {c}\n")
        out.write(f"  comodernistic: {summary.comodernistic}\n")
        out.write(f"  dually semimodular: {summary.dually_semimodular}\n")
        out.write(f"  left-modular maximal chain: {summary.left_modular_chain}\n")
        out.write(f"  averaged condition: {summary.averaged_satisfied}\n")
    else:
        _emit({"n": args.n, **summary.to_dict()}, args.format, out)
    if bad:
        print(f"{bad} Frankl counterexamples found", file=sys.stderr)
    return EXIT_FAILED if bad else EXIT_OK


# -- group commands ----------------------------------------------------------

def cmd_group_check(args, out):
    G = _load_group(args.group)
    if G.n < 2:
        raise InputError("the trivial group has a one-element subgroup lattice")
    SL = build_subgroup_lattice(G)
    report = frankl_full(G, SL)
    _emit(_group_report_record(G, SL, report, args.emit_certificate), args.format, out)
    if report.critical:
        print("critical: a proved certification route failed", file=sys.stderr)
    return _exit_for(report)


def cmd_group_lattice(args, out):
    G = _load_group(args.group)
    text = serialize(build_subgroup_lattice(G).lattice)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _parse_selector(G, selector):
    try:
        seed = [int(t) for t in selector.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad subgroup selector {selector!r}") from None
    try:
        return gr.generated_subgroup(G, seed)
    except gr.GroupError as exc:
        raise InputError(str(exc)) from None


def cmd_group_interval(args, out):
    G = _load_group(args.group)
    H = _parse_selector(G, args.h)
    if H.order == G.n:
        raise InputError("H generates all of G; the interval [G, G] is trivial")
    SL = build_subgroup_lattice(G)
    report = certify_interval(G, H, SL)
    record = _group_report_record(G, SL, report, args.emit_certificate)
    record["h"] = list(H.elements)
    _emit(record, args.format, out)
    return _exit_for(report)


def cmd_group_solvable_intervals(args, out):
    G = _load_group(args.group)
    if not gr.is_solvable(G):
        raise InputError(f"{G.name} is not solvable")
    sweep = verify_solvable_intervals(G)
    _emit(sweep.to_dict(), args.format, out)
    return EXIT_OK if sweep.passed else EXIT_CRITICAL


def cmd_group_complemented(args, out):
    G = _load_group(args.group)
    SL = build_subgroup_lattice(G)
    if not gr.is_complemented_group(G, SL.labels):
        raise InputError(f"{G.name} has a subgroup without a complement")
    report = verify_complemented(G, SL)
    _emit(report.to_dict(), args.format, out)
    return EXIT_OK if report.all_witnesses else EXIT_CRITICAL


def cmd_suite(args, out):
    from .suite import run_suite

    def show(result):
        out.write(result.line() + "\n")
        out.flush()

    results = run_suite(args.max_lattice, args.max_group, jobs=args.jobs, seed=args.seed,
                        progress=show if args.format == "table" else None)
    passed = sum(r.passed for r in results)
    if args.format == "table":
        out.write(f"{passed}/{len(results)} criteria passed\n")
    else:
        for r in results:
            _emit({"criterion": r.key, "title": r.title, "passed": r.passed, "detail": r.detail},
                  args.format, out)
    return EXIT_OK if passed == len(results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--emit-certificate", action="store_true",
                        help="include the explicit injection in reports")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--max-order", type=int, default=None,
                        help="group order cap (overrides FRANKL_MAX_ORDER)")
    common.add_argument("--seed", type=int, default=0, help="shuffle seed for suite checks")

    parser = argparse.ArgumentParser(prog="frankl", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"frankl {__version__}")
    top = parser.add_subparsers(dest="command", required=True)

    lattice = top.add_parser("lattice", help="lattice files and enumeration").add_subparsers(
        dest="subcommand", required=True)
    p = lattice.add_parser("check", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice_check)
    p = lattice.add_parser("certify", parents=[common])
    p.add_argument("file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--generalized", action="store_true")
    p.set_defaults(func=cmd_lattice_certify)
    p = lattice.add_parser("props", parents=[common])
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice_props)
    p = lattice.add_parser("enumerate", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--emit-files", metavar="DIR")
    p.add_argument("--scan", action="store_true")
    p.set_defaults(func=cmd_lattice_enumerate)

    group = top.add_parser("group", help="groups and subgroup lattices").add_subparsers(
        dest="subcommand", required=True)
    p = group.add_parser("check", parents=[common])
    p.add_argument("group", metavar="SPEC|FILE")
    p.set_defaults(func=cmd_group_check)
    p = group.add_parser("lattice", parents=[common])
    p.add_argument("group", metavar="SPEC|FILE")
    p.add_argument("--out")
    p.set_defaults(func=cmd_group_lattice)
    p = group.add_parser("interval", parents=[common])
    p.add_argument("group", metavar="SPEC|FILE")
    p.add_argument("--h", required=True, help="comma-separated element indices generating H")
    p.set_defaults(func=cmd_group_interval)
    p = group.add_parser("solvable-intervals", parents=[common])
    p.add_argument("group", metavar="SPEC|FILE")
    p.set_defaults(func=cmd_group_solvable_intervals)
    p = group.add_parser("complemented", parents=[common])
    p.add_argument("group", metavar="SPEC|FILE")
    p.set_defaults(func=cmd_group_complemented)

    p = top.add_parser("suite", parents=[common], help="run the full verification battery")
    p.add_argument("--max-lattice", type=int, default=8)
    p.add_argument("--max-group", type=int, default=24)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.max_order is not None:
        if args.max_order < 1:
            print("error: --max-order must be positive", file=sys.stderr)
            return EXIT_INPUT
        os.environ["FRANKL_MAX_ORDER"] = str(args.max_order)
    try:
        return args.func(args, out)
    except (InputError, LatticeError, gr.GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CrossCheckFailed, InternalCheckFailed) as exc:
        print(f"critical: {exc}", file=sys.stderr)
        return EXIT_CRITICAL


if __name__ == "__main__":
    sys.exit(main())
