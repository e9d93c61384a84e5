"""Canonical JSON emission and subject hashing.

Certificates must be byte-identical across repeated runs and across
parallelism degrees, so every serialization in the package goes through
:func:`canonical_dumps` (sorted keys, compact separators, CPython's
shortest round-trip float repr).
"""

from __future__ import annotations

import hashlib
import json


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def canonical_bytes(obj) -> bytes:
    # trailing newline so emitted files are well-formed text files
    return (canonical_dumps(obj) + "\n").encode("utf-8")


def subject_hash(obj) -> str:
    """SHA-256 over the canonical JSON form of a subject (matrix, frame, ...)."""
    return hashlib.sha256(canonical_dumps(obj).encode("utf-8")).hexdigest()
