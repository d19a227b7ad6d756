"""Property-checked experiments on descent moduli.

Thin dict-friendly wrappers over the C++ extension. Every run returns a report
envelope: schema tag, the canonical config, its content hash, a list of
asserted properties (failures carry witnesses), and the command's payload.
"""

import json as _json

try:
    from ._slopelab import (
        __version__,
        block_slope,
        block_value,
        content_hash as _content_hash,
        default_config as _default_config,
        run_csv as _run_csv,
        run_json as _run_json,
    )
except ImportError:  # in-tree builds put the extension directly on sys.path
    from _slopelab import (
        __version__,
        block_slope,
        block_value,
        content_hash as _content_hash,
        default_config as _default_config,
        run_csv as _run_csv,
        run_json as _run_json,
    )

__all__ = [
    "__version__",
    "run",
    "run_table",
    "content_hash",
    "default_config",
    "block_value",
    "block_slope",
]


def _config(command, overrides):
    cfg = {"command": command}
    cfg.update(overrides)
    return _json.dumps(cfg)


def run(command, **overrides):
    """Run one command and return its envelope as a dict.

    The envelope's ``ok`` field mirrors the CLI exit code: True when every
    asserted property holds. Malformed configs raise ValueError.

    >>> report = run("sequence", prefix_budget=32)
    >>> report["ok"]
    True
    """
    _, envelope = _run_json(_config(command, overrides))
    return _json.loads(envelope)


def run_table(command, **overrides):
    """Run one command and return its CSV table as a string.

    Raises ValueError for commands that have no tabular view.
    """
    _, table = _run_csv(_config(command, overrides))
    return table


def content_hash(command, **overrides):
    """Canonical content stamp of a config; delivery settings do not count."""
    return _content_hash(_config(command, overrides))


def default_config(command):
    """The full default config for a command, as a dict."""
    return _json.loads(_default_config(command))
