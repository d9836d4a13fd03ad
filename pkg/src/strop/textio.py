"""Field-based structured text files.

All on-disk formats here are sequences of `key: value` fields where the
value is a JSON fragment (numbers, strings, nested lists). Whitespace and
newlines are free between tokens, `#` starts a comment outside strings,
and exact scalars travel as strings like "-7/3". One scanner serves every
format so round-trips are bit-exact through one canonical emitter.
"""

import json
import re

from .errors import ParseError

_KEY_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _strip_comments(text):
    out = []
    in_string = False
    i = 0
    while i < len(text):
        ch = text[i]
        if in_string:
            out.append(ch)
            if ch == "\\" and i + 1 < len(text):
                out.append(text[i + 1])
                i += 2
                continue
            if ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
            out.append(ch)
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        else:
            out.append(ch)
        i += 1
    return "".join(out)


def parse_fields(text, known_keys):
    """Split `key: json-value` fields at bracket depth zero.

    Returns {key: parsed value}; unknown or repeated keys and malformed
    JSON raise ParseError.
    """
    text = _strip_comments(text)
    # locate keys: identifier followed by ':' at depth 0
    marks = []
    depth = 0
    in_string = False
    i = 0
    while i < len(text):
        ch = text[i]
        if in_string:
            if ch == "\\":
                i += 2
                continue
            if ch == '"':
                in_string = False
        elif ch == '"':
            in_string = True
        elif ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        elif depth == 0 and (ch.isalpha() or ch == "_"):
            m = _KEY_RE.match(text, i)
            j = m.end()
            k = j
            while k < len(text) and text[k] in " \t":
                k += 1
            if k < len(text) and text[k] == ":":
                marks.append((i, k + 1, m.group(0)))
                i = k + 1
                continue
            raise ParseError("stray token %r outside any field" % m.group(0))
        i += 1
    if depth != 0:
        raise ParseError("unbalanced brackets")
    fields = {}
    for idx, (start, vstart, key) in enumerate(marks):
        if key not in known_keys:
            raise ParseError("unknown field %r (expected one of %s)"
                            % (key, sorted(known_keys)))
        if key in fields:
            raise ParseError("field %r given twice" % key)
        vend = marks[idx + 1][0] if idx + 1 < len(marks) else len(text)
        raw = text[vstart:vend].strip()
        if not raw:
            raise ParseError("field %r has no value" % key)
        try:
            fields[key] = json.loads(raw)
        except json.JSONDecodeError as e:
            raise ParseError("field %r: bad value %r (%s)" % (key, raw, e)) from e
    return fields


def require_fields(fields, required):
    for key in required:
        if key not in fields:
            raise ParseError("missing required field %r" % key)


def emit_fields(pairs):
    """Canonical serialization: one field per line, compact JSON values."""
    lines = []
    for key, value in pairs:
        lines.append("%s: %s" % (key, json.dumps(value, separators=(", ", ": "))))
    return "\n".join(lines) + "\n"
