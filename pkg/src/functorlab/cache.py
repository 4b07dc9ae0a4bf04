"""Content-addressed caching for Groebner output.

Keys are SHA-256 digests of a canonical JSON rendering of (computation kind,
ring signature, order signature, twists, generator strings); values are JSON.
A hit must be byte-reproducible from the key's content, so cached and fresh
runs give identical results.

Two tiers: an in-process dict, and an optional directory (FUNCTORLAB_CACHE_DIR
or configure()). Disk writes go through a temp file and os.replace so a
killed process never leaves a half-written entry; unreadable entries count as
misses and are recomputed, never trusted.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile


class Cache:
    def __init__(self, directory=None, enabled=True):
        self.directory = directory
        self.enabled = enabled
        self.memory = {}
        self.hits = 0
        self.misses = 0
        self.puts = 0
        self.corrupt = 0

    def key(self, *parts):
        blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def _path(self, key):
        return os.path.join(self.directory, key[:2], key + ".json")

    def get(self, key):
        if not self.enabled:
            return None
        if key in self.memory:
            self.hits += 1
            return self.memory[key]
        if self.directory:
            path = self._path(key)
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    value = json.load(fh)
                self.memory[key] = value
                self.hits += 1
                return value
            except FileNotFoundError:
                pass
            except (OSError, ValueError):
                self.corrupt += 1
        self.misses += 1
        return None

    def put(self, key, value):
        if not self.enabled:
            return
        self.memory[key] = value
        self.puts += 1
        if not self.directory:
            return
        path = self._path(key)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(value, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass

    def stats(self):
        return {
            "hits": self.hits,
            "misses": self.misses,
            "puts": self.puts,
            "corrupt": self.corrupt,
        }


_ACTIVE = Cache(directory=os.environ.get("FUNCTORLAB_CACHE_DIR"))


def active_cache():
    return _ACTIVE


def configure(directory=None, enabled=True):
    """Install a fresh cache (used by the CLI); returns it."""
    global _ACTIVE
    _ACTIVE = Cache(directory=directory, enabled=enabled)
    return _ACTIVE
