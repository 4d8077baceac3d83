# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

from .fingerprint import generate_key, result_cache
from .serialization import write_artifact, write_json

__all__ = ["generate_key", "result_cache", "write_artifact", "write_json"]
