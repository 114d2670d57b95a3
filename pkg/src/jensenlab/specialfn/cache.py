"""On-disk cache for Xi jets.

File layout (text, one record per line)::

    jensenlab-xi-jet <format version>
    {"M": ..., "prec": ..., "method": ..., "version": ..., ...}   # JSON header
    k sign mantissa_hex exponent mid_prec rad_mantissa_hex rad_exponent

Midpoints and radii are stored as exact binary mantissa/exponent pairs, so
values round-trip bit for bit.  Writes go to a temporary file that is then
renamed over the target, so readers never see a partial file.  Creation
metadata records the producing library versions but no timestamp, so
identical inputs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

import gmpy2
import mpmath

from ..numeric import RAD_PREC, Ball, _near

__all__ = ["FORMAT_VERSION", "cache_path", "default_cache_dir", "load_jet_values", "store_jet_values"]

FORMAT_VERSION = 1
MAGIC = "jensenlab-xi-jet"


def default_cache_dir() -> Path:
    env = os.environ.get("JENSENLAB_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "jensenlab"


def cache_path(cache_dir, M: int, prec: int, method: str, version: str) -> Path:
    return Path(cache_dir) / f"xi-M{M}-p{prec}-{method}-v{version}.jet"


def _encode(k: int, b: Ball) -> str:
    m, e = b.mid.as_mantissa_exp()
    sign = "-" if m < 0 else "+"
    rm, re = b.rad.as_mantissa_exp()
    return f"{k} {sign} {abs(int(m)):x} {int(e)} {b.prec} {int(rm):x} {int(re)}"


def _decode(line: str):
    k, sign, mant, exp, prec, rmant, rexp = line.split()
    prec = int(prec)
    m = gmpy2.mpz(int(mant, 16))
    if sign == "-":
        m = -m
    rm = gmpy2.mpz(int(rmant, 16))
    if m.bit_length() > prec or rm.bit_length() > RAD_PREC:
        raise ValueError("mantissa wider than the recorded precision")
    mid = _near(prec).mul_2exp(gmpy2.mpfr(m, prec), int(exp))
    rad = _near(RAD_PREC).mul_2exp(gmpy2.mpfr(rm, RAD_PREC), int(rexp))
    return int(k), Ball._raw(mid, rad, prec)


def _creator() -> dict:
    from .. import __version__
    return {"jensenlab": __version__, "gmpy2": gmpy2.version(), "mpfr": gmpy2.mpfr_version(),
            "mpmath": mpmath.__version__}


def _max_rad_exp(values):
    """Binary exponent of the widest radius (None if all values are exact)."""
    exps = [gmpy2.get_exp(v.rad) for v in values if v.rad != 0]
    return max(exps) if exps else None


def store_jet_values(path, values, header: dict) -> None:
    """Write values atomically; ``values`` are Balls (odd slots may be exact zeros)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = "\n".join(_encode(k, v) for k, v in enumerate(values)) + "\n"
    meta = dict(header)
    meta["created_by"] = _creator()
    meta["count"] = len(values)
    meta["max_rad_exp"] = _max_rad_exp(values)
    meta["sha256"] = hashlib.sha256(body.encode()).hexdigest()
    text = f"{MAGIC} {FORMAT_VERSION}\n{json.dumps(meta, sort_keys=True)}\n{body}"
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_jet_values(path, expect: dict) -> Optional[list]:
    """Return cached values if the file exists and its header matches ``expect``.

    Any mismatch (format, key fields, checksum, count, radius metadata)
    returns None so the caller recomputes.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError:
        return None
    lines = text.splitlines()
    if len(lines) < 2 or lines[0] != f"{MAGIC} {FORMAT_VERSION}":
        return None
    try:
        meta = json.loads(lines[1])
    except json.JSONDecodeError:
        return None
    if any(meta.get(k) != v for k, v in expect.items()):
        return None
    body = "\n".join(lines[2:]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != meta.get("sha256"):
        return None
    try:
        pairs = [_decode(line) for line in lines[2:]]
    except (ValueError, TypeError):
        return None
    if [k for k, _ in pairs] != list(range(meta.get("count", -1))):
        return None
    values = [v for _, v in pairs]
    if _max_rad_exp(values) != meta.get("max_rad_exp"):
        return None
    return values
