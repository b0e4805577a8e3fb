"""Disk cache for enumerated vector families.

One text file per (kind, n, N).  Line 1 is a manifest

    #n=<n>,N=<N>,count=<k>,alg=dfs-v1,sha256=<hex>

followed by ``count`` lines of comma-separated entries in lexicographic
order.  The checksum covers the payload lines exactly as written, so a
round-trip is verifiable without re-enumeration.  The manifest count is
authoritative for consumers that only need cardinalities.

A lock file serializes writers against the same cache directory.
"""

from __future__ import annotations

import hashlib
import os
import time
from pathlib import Path
from typing import Iterator

from .arith import FibTable, fib_table
from .lattice import (SetFamily, Vector, is_almost_consecutive_free,
                      sorted_rows, unpack_row)

ALG_TAG = "dfs-v1"
_LOCK_TIMEOUT = 600.0


class CacheError(RuntimeError):
    pass


def family_path(cache_dir: str | Path, kind: str, n: int, N: int) -> Path:
    return Path(cache_dir) / f"{kind}_{n}_{N}.txt"


class _Lock:
    def __init__(self, cache_dir: Path):
        self.path = cache_dir / ".lock"

    def __enter__(self):
        deadline = time.monotonic() + _LOCK_TIMEOUT
        while True:
            try:
                fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                os.close(fd)
                return self
            except FileExistsError:
                if time.monotonic() > deadline:
                    raise CacheError(f"cache lock {self.path} held too long")
                time.sleep(0.05)

    def __exit__(self, *exc):
        try:
            os.unlink(self.path)
        except FileNotFoundError:
            pass
        return False


def _manifest(n: int, N: int, count: int, digest: str) -> str:
    return f"#n={n},N={N},count={count},alg={ALG_TAG},sha256={digest}\n"


def _parse_manifest(line: str) -> dict[str, str]:
    if not line.startswith("#"):
        raise CacheError("missing manifest line")
    fields = dict(kv.split("=", 1) for kv in line[1:].strip().split(","))
    for key in ("n", "N", "count", "alg"):
        if key not in fields:
            raise CacheError(f"manifest missing field {key!r}")
    return fields


def _write_family(path: Path, n: int, N: int, lines: list[str]) -> None:
    sha = hashlib.sha256()
    for ln in lines:
        sha.update(ln.encode())
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        fh.write(_manifest(n, N, len(lines), sha.hexdigest()))
        fh.writelines(lines)
    os.replace(tmp, path)


def write_count_and_members(cache_dir: str | Path, n: int, N: int,
                            fib: FibTable | None = None) -> tuple[int, int]:
    """Enumerate level n once, writing the V file and the C file together.

    A single pass over the sorted packed rows formats each vector once and
    keeps only the consecutive-free ones in memory.  Returns (#V, #C).
    """
    h = fib or fib_table(n, N)
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    v_path = family_path(cache_dir, "V", n, N)
    c_path = family_path(cache_dir, "C", n, N)
    with _Lock(cache_dir):
        rows, width = sorted_rows(n, N, h)
        v_sha = hashlib.sha256()
        c_lines: list[str] = []
        tmp = v_path.with_suffix(".tmp")
        with open(tmp, "w") as fh:
            fh.write(" " * 120 + "\n")  # placeholder, rewritten below
            for row in rows:
                vec = unpack_row(row, N, width)
                line = ",".join(map(str, vec)) + "\n"
                v_sha.update(line.encode())
                fh.write(line)
                if is_almost_consecutive_free(vec):
                    c_lines.append(line)
        manifest = _manifest(n, N, len(rows), v_sha.hexdigest())
        with open(tmp, "r+") as fh:
            fh.write(manifest.rstrip("\n").ljust(120) + "\n")
        os.replace(tmp, v_path)
        _write_family(c_path, n, N, c_lines)
        return len(rows), len(c_lines)


def read_count(cache_dir: str | Path, kind: str, n: int, N: int) -> int | None:
    """Manifest count, or None when the file is absent."""
    path = family_path(cache_dir, kind, n, N)
    if not path.exists():
        return None
    with open(path) as fh:
        fields = _parse_manifest(fh.readline())
    if (int(fields["n"]), int(fields["N"])) != (n, N):
        raise CacheError(f"manifest of {path} does not match ({n}, {N})")
    return int(fields["count"])


def iter_members(cache_dir: str | Path, kind: str, n: int, N: int,
                 verify: bool = True) -> Iterator[Vector]:
    """Stream vectors from a cache file, checking count and checksum."""
    path = family_path(cache_dir, kind, n, N)
    with open(path) as fh:
        fields = _parse_manifest(fh.readline())
        count = int(fields["count"])
        sha = hashlib.sha256() if verify else None
        seen = 0
        for line in fh:
            if sha is not None:
                sha.update(line.encode())
            seen += 1
            yield tuple(int(c) for c in line.strip().split(","))
        if seen != count:
            raise CacheError(f"{path}: {seen} rows, manifest says {count}")
        if sha is not None and "sha256" in fields \
                and sha.hexdigest() != fields["sha256"]:
            raise CacheError(f"{path}: checksum mismatch")


def read_family(cache_dir: str | Path, kind: str, n: int, N: int) -> SetFamily:
    members = tuple(iter_members(cache_dir, kind, n, N))
    return SetFamily(n, N, kind, members)


def ensure_counts(cache_dir: str | Path, n: int, N: int,
                  fib: FibTable | None = None) -> tuple[int, int]:
    """(#V_n, #C_n) from cache, enumerating and persisting on a miss."""
    v = read_count(cache_dir, "V", n, N)
    c = read_count(cache_dir, "C", n, N)
    if v is not None and c is not None:
        return v, c
    return write_count_and_members(cache_dir, n, N, fib)


def ensure_C(cache_dir: str | Path, n: int, N: int,
             fib: FibTable | None = None) -> SetFamily:
    """C_n from cache, enumerating the level on a miss."""
    if read_count(cache_dir, "C", n, N) is None:
        write_count_and_members(cache_dir, n, N, fib)
    return read_family(cache_dir, "C", n, N)
