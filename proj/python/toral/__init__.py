"""Torality, rational inner functions and Pick interpolation on the bidisk.

Thin wrapper over the C++ library. Every CLI command is reachable through
:func:`command`, which returns the decoded JSON result.
"""

import json

from ._toral import (  # noqa: F401
    DomainError,
    Error,
    ParseError,
    PrecisionError,
    canonical,
    plot_rows,
    reflect,
    run,
)
from . import _toral

EXIT_CODES = {0: "ok", 2: "unknown command", 3: "parse error", 4: "inconclusive", 5: "internal error"}


class CommandError(RuntimeError):
    def __init__(self, code, result, stderr):
        super().__init__(f"exit {code} ({EXIT_CODES.get(code, '?')}): {stderr.strip()}")
        self.code = code
        self.result = result


def command(*args, check=True):
    """Runs a CLI command with --json and returns the result object."""
    code, out, err = run(["--json", *map(str, args)])
    result = json.loads(out) if out.strip() else None
    if check and code != 0:
        raise CommandError(code, result, err)
    return result


def classify(expr):
    return json.loads(_toral.classify_json(expr))


def verify(document):
    """Replays every certificate inside a JSON value (dict, list or text)."""
    text = document if isinstance(document, str) else json.dumps(document)
    return json.loads(_toral.verify_json(text))
