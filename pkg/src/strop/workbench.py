"""Manifest-driven jobs with a content-addressed result cache.

A job manifest is a field-text file naming a task, its input files, and
the knobs the task understands: coefficient ring, degree window, tensor
cap, and flags.  Running a job produces a result document whose first
fields echo the request (manifest fields plus content hashes of every
input file) and whose remaining fields are the task's output, in a fixed
key order.  The canonical document carries no timing and no cache
information, so repeated runs of one request are byte-identical whether
they were computed fresh or served from the cache.

Caching is off by default.  It turns on when run() is given a cache
directory, or when the STROP_CACHE_DIR environment variable names one.
Entries are keyed by a hash of the request fields, so a changed input
file changes the key; each entry file starts with a checksum line over
the rest of its bytes, and an entry that fails that check is recomputed
and rewritten with a warning status rather than trusted.
"""

import hashlib
import json
import os
import tempfile
import time

from .algebra import FiniteGradedAlgebra
from .cactus import cactus_fields, cactus_from_text, compose, validate
from .errors import ParseError
from .hochschild import build_window, ring_presentation
from .linalg import smith_normal_form
from .loop_ring import loop_ring_from_complex, loop_ring_from_formal
from .oracle import oracle_compare
from .rings import INTEGERS, CoefficientRing
from .simplicial import (chain_boundary_matrix, cohomology_ring,
                         homology_summary, load_complex)
from .textio import emit_fields, parse_fields, require_fields

TASKS = ("betti", "cohomology-ring", "hochschild", "loop-ring",
         "cactus-validate", "cactus-compose", "oracle-compare")

CACHE_DIR_VARIABLE = "STROP_CACHE_DIR"

_MANIFEST_KEYS = ("task", "inputs", "ring", "window", "tensor_max",
                  "normalized", "formal", "transforms", "dimension")
_NEEDS_RING = ("betti", "cohomology-ring")
_NEEDS_WINDOW = ("hochschild", "loop-ring", "oracle-compare")
_NEEDS_CAP = ("hochschild", "oracle-compare")


def parse_manifest(text):
    fields = parse_fields(text, _MANIFEST_KEYS)
    require_fields(fields, ["task", "inputs"])
    return fields


def load_manifest(path):
    return parse_manifest(_read_file(path, "manifest"))


def check_manifest(manifest):
    """Shape and per-task requirement checks; raises ParseError."""
    unknown = sorted(set(manifest) - set(_MANIFEST_KEYS))
    if unknown:
        raise ParseError("unknown manifest fields %r" % (unknown,))
    task = manifest.get("task")
    if task not in TASKS:
        raise ParseError("unknown task %r; expected one of %s"
                         % (task, ", ".join(TASKS)))
    inputs = manifest.get("inputs")
    if (not isinstance(inputs, list) or not inputs
            or not all(isinstance(p, str) for p in inputs)):
        raise ParseError("inputs must be a nonempty list of file paths")
    if task == "cactus-compose":
        if len(inputs) < 2:
            raise ParseError("cactus-compose takes an outer cactus "
                             "followed by one input per lobe")
    elif len(inputs) != 1:
        raise ParseError("task %r takes exactly one input" % task)
    if "ring" in manifest and not isinstance(manifest["ring"], str):
        raise ParseError("ring must be a string name")
    if "window" in manifest:
        win = manifest["window"]
        if (not isinstance(win, list) or len(win) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool)
                           for v in win)
                or win[0] > win[1]):
            raise ParseError("window must be a pair [lo, hi] of integers "
                             "with lo <= hi")
    if "tensor_max" in manifest:
        cap = manifest["tensor_max"]
        if not isinstance(cap, int) or isinstance(cap, bool) or cap < 0:
            raise ParseError("tensor_max must be a nonnegative integer")
    for flag in ("normalized", "formal", "transforms"):
        if flag in manifest and not isinstance(manifest[flag], bool):
            raise ParseError("%s must be a boolean" % flag)
    if "dimension" in manifest:
        d = manifest["dimension"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise ParseError("dimension must be a nonnegative integer")
    if task in _NEEDS_RING and "ring" not in manifest:
        raise ParseError("task %r needs a ring" % task)
    if task == "loop-ring" and not manifest.get("formal") \
            and "ring" not in manifest:
        raise ParseError("loop-ring on a complex needs a ring")
    if task in _NEEDS_WINDOW and "window" not in manifest:
        raise ParseError("task %r needs a window" % task)
    if task in _NEEDS_CAP and "tensor_max" not in manifest:
        raise ParseError("task %r needs tensor_max" % task)


class ResultDocument:
    """A finished job: canonical text plus out-of-band run metadata.

    text is the cacheable payload.  timing_ms and cache_status
    ("computed", "hit", or "recomputed" after a failed checksum) describe
    this particular run and never enter the payload.
    """

    __slots__ = ("text", "timing_ms", "cache_status")

    def __init__(self, text, timing_ms, cache_status):
        self.text = text
        self.timing_ms = timing_ms
        self.cache_status = cache_status

    def pairs(self):
        out = []
        for line in self.text.splitlines():
            key, _, raw = line.partition(": ")
            out.append((key, json.loads(raw)))
        return out

    def value(self, key):
        for k, v in self.pairs():
            if k == key:
                return v
        raise KeyError(key)

    def __repr__(self):
        return ("ResultDocument(%d bytes, %s, %d ms)"
                % (len(self.text), self.cache_status, self.timing_ms))


def _sha256_text(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _read_file(path, role):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s file %r: %s" % (role, path, exc))


def request_fields(manifest, input_hashes):
    pairs = [("task", manifest["task"]),
             ("inputs", list(manifest["inputs"])),
             ("input_hashes", list(input_hashes))]
    for key in ("ring", "window", "tensor_max", "normalized", "formal",
                "transforms", "dimension"):
        if key in manifest:
            pairs.append((key, manifest[key]))
    return pairs


def _cache_path(cache_dir, key):
    return os.path.join(cache_dir, key + ".result")


def _cache_load(path):
    """(found, body); found with body None means the entry is corrupt."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            blob = fh.read()
    except OSError:
        return False, None
    head, sep, body = blob.partition("\n")
    if not sep or not head.startswith("checksum: "):
        return True, None
    if head[len("checksum: "):] != _sha256_text(body):
        return True, None
    return True, body


def _cache_store(cache_dir, key, body):
    os.makedirs(cache_dir, exist_ok=True)
    payload = "checksum: %s\n%s" % (_sha256_text(body), body)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".partial-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        # rename is atomic, so readers only ever see complete entries
        os.replace(tmp, _cache_path(cache_dir, key))
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def run(manifest, cache_dir=None):
    """Execute one job, consulting the cache when a directory is set.

    cache_dir falls back to the STROP_CACHE_DIR environment variable;
    with neither given every run computes.  The cache can only ever
    short-circuit work: hits return the stored canonical bytes, and a
    corrupt entry is recomputed, not trusted.
    """
    t0 = time.monotonic()
    check_manifest(manifest)
    texts = [_read_file(p, "input") for p in manifest["inputs"]]
    hashes = [_sha256_text(t) for t in texts]
    head = request_fields(manifest, hashes)
    key = _sha256_text(emit_fields(head))
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_DIR_VARIABLE) or None
    status = "computed"
    if cache_dir:
        found, body = _cache_load(_cache_path(cache_dir, key))
        if found and body is not None:
            return ResultDocument(body, _elapsed_ms(t0), "hit")
        if found:
            status = "recomputed"
    out = _HANDLERS[manifest["task"]](manifest, texts)
    text = emit_fields(head + out)
    if cache_dir:
        _cache_store(cache_dir, key, text)
    return ResultDocument(text, _elapsed_ms(t0), status)


def _elapsed_ms(t0):
    return int(round((time.monotonic() - t0) * 1000))


# ---------------------------------------------------------------------------
# task handlers; each returns the task-specific output field pairs

def _ring_of(manifest):
    return CoefficientRing.from_name(manifest["ring"])


def _algebra_input(manifest, text):
    a = FiniteGradedAlgebra.from_text(text)
    if "ring" in manifest and _ring_of(manifest).name != a.ring.name:
        raise ParseError("manifest ring %r does not match the input "
                         "algebra's ring %r"
                         % (manifest["ring"], a.ring.name))
    return a


def _transforms_diagonalize(matrix, snf):
    """Exact check that U * A * V equals the reported diagonal."""
    product = snf.transform_left.mul(matrix, INTEGERS).mul(
        snf.transform_right, INTEGERS)
    return product.entries == {(i, i): d
                               for i, d in enumerate(snf.diagonal) if d}


def _task_betti(manifest, texts):
    ring = _ring_of(manifest)
    cd = load_complex(texts[0])
    if manifest.get("transforms") and ring.name != "z":
        raise ParseError("transforms tracks integer Smith forms; use ring z")
    summary = homology_summary(cd, ring)
    out = [("betti", [summary[m].free_rank for m in range(cd.dimension + 1)])]
    if ring.name == "z":
        out.append(("torsion", {str(m): [str(t) for t in summary[m].torsion]
                                for m in range(cd.dimension + 1)
                                if summary[m].torsion}))
        if manifest.get("transforms"):
            factors = {}
            for m in range(1, cd.dimension + 1):
                matrix = chain_boundary_matrix(cd, m, ring)
                snf = smith_normal_form(matrix, with_transforms=True)
                if not _transforms_diagonalize(matrix, snf):
                    raise AssertionError(
                        "unimodular transforms fail to diagonalize the "
                        "degree-%d boundary matrix" % m)
                factors[str(m)] = snf.invariant_factors
            out.append(("invariant_factors", factors))
            out.append(("transforms_verified", True))
    return out


def _task_cohomology_ring(manifest, texts):
    ring = _ring_of(manifest)
    a = cohomology_ring(load_complex(texts[0]), ring)
    by_degree = {}
    for i, m in enumerate(a.degrees):
        by_degree.setdefault(m, []).append(i)
    unit_ix = a.unit_pivot if len(a.unit) == 1 else None
    products = {}
    for i in range(a.dim):
        for j in range(a.dim):
            if unit_ix in (i, j):
                continue
            combo = a.multiply_basis(i, j)
            if combo:
                products["%s*%s" % (a.names[i], a.names[j])] = {
                    a.names[k]: ring.scalar_to_str(c)
                    for k, c in sorted(combo.items())}
    return [
        ("dimensions", {str(m): len(ix)
                        for m, ix in sorted(by_degree.items())}),
        ("representatives", {str(m): [a.names[i] for i in ix]
                             for m, ix in sorted(by_degree.items())}),
        ("unit", {a.names[i]: ring.scalar_to_str(c)
                  for i, c in sorted(a.unit.items())}),
        ("products", products),
    ]


def _task_hochschild(manifest, texts):
    a = _algebra_input(manifest, texts[0])
    lo, hi = manifest["window"]
    w = build_window(a, manifest["tensor_max"], (lo, hi),
                     normalized=manifest.get("normalized", True))
    return ring_presentation(w).document_fields()


def _task_loop_ring(manifest, texts):
    window = tuple(manifest["window"])
    cap = manifest.get("tensor_max")
    # an explicit cap means the caller accepts lower bounds plus warnings;
    # without one the cap is derived and must certify every degree
    saturate = cap is None
    if manifest.get("formal"):
        a = _algebra_input(manifest, texts[0])
        d = manifest.get("dimension", max(a.degrees))
        res = loop_ring_from_formal(a, d, window, max_tensor_length=cap,
                                    require_saturation=saturate)
    else:
        res = loop_ring_from_complex(load_complex(texts[0]),
                                     _ring_of(manifest), window,
                                     max_tensor_length=cap,
                                     require_saturation=saturate)
    return res.document_fields()


def _task_cactus_validate(manifest, texts):
    return validate(cactus_from_text(texts[0])).document_fields()


def _task_cactus_compose(manifest, texts):
    outer = cactus_from_text(texts[0])
    composed = compose(outer, [cactus_from_text(t) for t in texts[1:]])
    report = validate(composed)
    return cactus_fields(composed) + [
        ("incidence_total", report.m),
        ("vertex_count", report.n),
        ("multiplicities", list(report.multiplicities)),
    ]


def _task_oracle_compare(manifest, texts):
    a = _algebra_input(manifest, texts[0])
    r = oracle_compare(a, manifest["tensor_max"],
                       tuple(manifest["window"]))
    return list(r.as_fields().items())


_HANDLERS = {
    "betti": _task_betti,
    "cohomology-ring": _task_cohomology_ring,
    "hochschild": _task_hochschild,
    "loop-ring": _task_loop_ring,
    "cactus-validate": _task_cactus_validate,
    "cactus-compose": _task_cactus_compose,
    "oracle-compare": _task_oracle_compare,
}
