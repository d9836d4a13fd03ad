"""Command line front end: one subcommand per workbench task.

Every subcommand accepts a manifest file, positional input paths, or
both; flags given on the command line override the manifest's fields.
Windows are written lo..hi (for example -2..6).  Results go to stdout as
the canonical field lines plus a trailing timing line; --emit table
renders the same fields aligned for reading.  Errors and cache warnings
go to stderr, never into the document.
"""

import argparse
import json
import re
import sys

from .errors import StropError
from .workbench import TASKS, load_manifest, run

_TASK_HELP = {
    "betti": "Betti numbers of a simplicial complex (torsion over z)",
    "cohomology-ring": "cohomology of a complex with its cup products",
    "hochschild": "Hochschild cohomology ring of a finite graded algebra",
    "loop-ring": "loop homology ring of a manifold, by complex or model",
    "cactus-validate": "check a treelike circle configuration",
    "cactus-compose": "substitute configurations into an outer one",
    "oracle-compare": "cross-check the windowed complex on a small algebra",
}


def _parse_window(text):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(
            "window must look like lo..hi, got %r" % text)
    try:
        return [int(lo), int(hi)]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "window bounds must be integers, got %r" % text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="strop",
        description="string-topology workbench over exact coefficients")
    sub = parser.add_subparsers(dest="task", required=True, metavar="task")
    for task in TASKS:
        sp = sub.add_parser(task, help=_TASK_HELP[task])
        sp.add_argument("inputs", nargs="*", metavar="input",
                        help="input files; an alternative to the manifest")
        sp.add_argument("--manifest", metavar="path",
                        help="job manifest; flags override its fields")
        sp.add_argument("--ring", metavar="name",
                        help="coefficient ring: f2, q, z, or f<p>")
        sp.add_argument("--window", type=_parse_window, metavar="lo..hi")
        sp.add_argument("--tensor-max", type=int, metavar="s",
                        help="tensor length cap")
        sp.add_argument("--normalized", action="store_true", default=None,
                        help="use only unit-complement tensor slots")
        sp.add_argument("--full", dest="normalized", action="store_false",
                        help="keep unit tensor slots")
        sp.add_argument("--formal", action="store_true", default=None,
                        help="read the input as an algebra, not a complex")
        sp.add_argument("--transforms", action="store_true", default=None,
                        help="track and verify integer Smith transforms")
        sp.add_argument("--dimension", type=int, metavar="d",
                        help="manifold dimension for --formal input")
        sp.add_argument("--cache-dir", metavar="dir",
                        help="result cache location (default: "
                             "the STROP_CACHE_DIR variable, else none)")
        sp.add_argument("--emit", choices=("json", "table"), default="json")
        # teach argparse that a bare "-2..6" window is a value, not a flag
        sp._negative_number_matcher = re.compile(r"^-\d+(\.\.-?\d+)?$")
    return parser


def _merge(args):
    manifest = load_manifest(args.manifest) if args.manifest else {}
    if "task" in manifest and manifest["task"] != args.task:
        raise StropError("manifest task %r does not match subcommand %r"
                         % (manifest["task"], args.task))
    manifest["task"] = args.task
    if args.inputs:
        manifest["inputs"] = list(args.inputs)
    for key in ("ring", "window", "tensor_max", "normalized", "formal",
                "transforms", "dimension"):
        value = getattr(args, key)
        if value is not None:
            manifest[key] = value
    return manifest


def _table_text(doc):
    rows = doc.pairs() + [("timing_ms", doc.timing_ms)]
    width = max(len(k) for k, _ in rows)
    lines = []
    for key, value in rows:
        if isinstance(value, str):
            shown = value
        else:
            shown = json.dumps(value, separators=(", ", ": "))
        lines.append("%-*s  %s" % (width, key, shown))
    return "\n".join(lines) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        manifest = _merge(args)
        doc = run(manifest, cache_dir=args.cache_dir)
    except StropError as exc:
        print("error in task %s: %s" % (args.task, exc), file=sys.stderr)
        return 1
    if doc.cache_status == "recomputed":
        print("warning: cache entry failed its checksum; recomputed",
              file=sys.stderr)
    if args.emit == "table":
        sys.stdout.write(_table_text(doc))
    else:
        sys.stdout.write(doc.text)
        sys.stdout.write("timing_ms: %d\n" % doc.timing_ms)
    return 0
