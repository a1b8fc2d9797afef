#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Copyright (C) the medial-topology authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

import argparse
import json
import logging
import sys

from medial_topology import decomposition
from medial_topology import document
from medial_topology import dot
from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import homology
from medial_topology import invariants
from medial_topology import medial_model
from medial_topology import pipeline
from medial_topology import presentation
from medial_topology.config import CONFIG

logger = logging.getLogger("medial_topology")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _setup_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s - %(name)s - %(message)s"))
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else CONFIG["MEDIAL_LOG_LEVEL"])


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise exceptions.DocumentError("cannot read %s: %s" % (path, e.strerror))


def _emit(args, data, text: str) -> None:
    if getattr(args, "batch", None) is not None:
        args.batch.append({"file": args.file, "result": data})
    elif args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def cmd_validate(args) -> int:
    c = document.parse_complex(_read(args.file), validate=False)
    report = medial_model.validate_complex(c)
    junctions = medial_model.check_six_junction_consistency(c)
    for v in junctions.violations:
        report.warn(v.code, v.location, v.message)
    data = report.to_dict()
    data["germs"] = junctions.germs
    _emit(args, data, report.format())
    return EXIT_OK if report.ok else EXIT_INPUT


def cmd_decompose(args) -> int:
    c = document.parse_complex(_read(args.file))
    result = decomposition.decompose(c, args.policy)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as f:
            json.dump(list(result.log), f, indent=2)
    lines = ["policy %s: %d components" % (result.policy, len(result.components))]
    for m in result.components:
        lines.append("  %s: %s" % (m.component, ", ".join(s.id for s in m.sheets)))
    for e in result.gamma.edges:
        lines.append("  %s: %s -> %s" % (e.id, e.u, e.v))
    _emit(args, result.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_invariants(args) -> int:
    analysis = pipeline.analyze(document.parse_complex(_read(args.file)), args.policy)
    table = invariants.format_table(analysis.records, analysis.global_record)
    _emit(args, analysis.global_record.to_dict(), table)
    return EXIT_OK


def cmd_homology(args) -> int:
    analysis = pipeline.analyze(
        document.parse_complex(_read(args.file)), args.policy, oracle=args.oracle
    )
    lines = [homology.format_homology(h) for h in analysis.homology]
    total = homology.format_homology(analysis.global_homology)
    if analysis.oracle_agrees:
        total += "; oracle agrees"
    lines.append(total)
    lines.extend("  %s" % note for note in analysis.global_homology.notes)
    data = analysis.to_dict()
    _emit(args, {"homology": data["homology"], "oracle": data.get("oracle")}, "\n".join(lines))
    return EXIT_OK


def cmd_pi1(args) -> int:
    analysis = pipeline.analyze(document.parse_complex(_read(args.file)), args.policy)
    text = "\n".join(presentation.format_presentation(p) for p in analysis.presentations)
    _emit(args, [p.to_dict() for p in analysis.presentations], text)
    return EXIT_OK


def cmd_check_contractible(args) -> int:
    analysis = pipeline.analyze(document.parse_complex(_read(args.file)), args.policy)
    verdict = analysis.verdict
    lines = ["contractible" if verdict.contractible else "not contractible"]
    lines.extend("  %s" % note for note in verdict.diagnostics)
    _emit(args, verdict.to_dict(), "\n".join(lines))
    return EXIT_OK if verdict.contractible else EXIT_NEGATIVE


def cmd_export_dot(args) -> int:
    c = document.parse_complex(_read(args.file))
    if args.graph == "ynet":
        source = dot.export_dot(c.network, "ynet")
        _emit(args, {"dot": [source]}, source)
        return EXIT_OK
    if args.graph == "reduced":
        sources = [
            dot.export_reduced_dot(extended_graph.reduce_weighted(piece), "Y%d" % k)
            for k, piece in enumerate(medial_model.y_components(c), start=1)
        ]
        _emit(args, {"dot": sources}, "\n".join(sources))
        return EXIT_OK
    analysis = pipeline.analyze(c, args.policy)
    if args.graph == "gamma":
        sources = [dot.export_dot(analysis.decomposition.gamma, "gamma")]
    else:
        sources = [
            dot.export_dot(g, m.component)
            for m, g in zip(analysis.components, analysis.component_graphs)
            if args.component in (None, m.component)
        ]
    _emit(args, {"dot": sources}, "\n".join(sources))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="medial-topology", description="Topology of medial complexes."
    )
    parser.add_argument("--json", action="store_true", help="machine readable output")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    # accepted after the subcommand too; SUPPRESS keeps the value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", default=argparse.SUPPRESS, help="machine readable output"
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text, policy=True):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("files", nargs="+", metavar="FILE")
        if policy:
            p.add_argument("--policy", default=None, help="fin choice policy")
        p.set_defaults(func=func)
        return p

    command("validate", cmd_validate, "check a complex document", policy=False)
    p = command("decompose", cmd_decompose, "cut and contract fins")
    p.add_argument("--log", help="write the step log to this file")
    command("invariants", cmd_invariants, "invariant table")
    p = command("homology", cmd_homology, "integral homology")
    p.add_argument("--oracle", action="store_true", help="cross-check with the cell complex")
    command("pi1", cmd_pi1, "fundamental group presentations")
    command("check-contractible", cmd_check_contractible, "contractibility verdict")
    p = command("export-dot", cmd_export_dot, "graph export in DOT")
    p.add_argument("--graph", choices=("gamma", "lambda", "ynet", "reduced"), required=True)
    p.add_argument("--component", default=None, help="restrict lambda to one component")
    return parser


def _run(args) -> int:
    try:
        return args.func(args)
    except exceptions.InternalConsistencyError as e:
        logger.exception("%s: internal consistency failure: %s", args.file, e.message)
        return EXIT_INTERNAL
    except exceptions.MedialException as e:
        logger.error("%s: %s", args.file, e.message)
        if args.batch is not None:
            args.batch.append({"file": args.file, "error": e.to_dict()})
        elif args.json:
            print(json.dumps(e.to_dict(), indent=2, ensure_ascii=False))
        return EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    # several files: one result per file, exit code of the worst one
    args.batch = [] if args.json and len(args.files) > 1 else None
    code = EXIT_OK
    for path in args.files:
        args.file = path
        if len(args.files) > 1 and not args.json:
            print("==> %s <==" % path)
        code = max(code, _run(args))
    if args.batch is not None:
        print(json.dumps(args.batch, indent=2, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
