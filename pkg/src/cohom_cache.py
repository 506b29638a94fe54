"""
Module descriptors and the on-disk module cache.

Modules are stored as JSON records (rationals as `p/q` strings) in a DuckDB
file inside the cache directory, keyed by algebra and module descriptor.
"""
import json
import re
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import duckdb
from loguru import logger

from cohom_algebra import LieSuperalgebra, Weight
from cohom_config import DescriptorError, ModuleError, get_settings
from cohom_linalg import SparseRationalMatrix, fstr
from cohom_modules import (
    Module,
    adjoint_module,
    build_V_realization,
    dual_module,
    kac_module,
    natural_module,
    simple_module,
    sym_power_eps,
    tau_twist,
    trivial_module,
)


CACHE_VERSION = 1
DB_NAME = "modules.duckdb"

_WRAPPED = re.compile(r"^(dual|tau|sym2)\((.*)\)$")


def parse_weight(L: LieSuperalgebra, text: str) -> Weight:
    try:
        weight = Weight.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DescriptorError(f"bad weight {text!r}: {e}") from e
    if (weight.m, weight.n) != (L.m, L.n):
        raise DescriptorError(f"weight {text!r} does not fit {L.descriptor}")
    return weight


def module_from_descriptor(L: LieSuperalgebra, text: str) -> Module:
    """Build a module from `trivial`, `adjoint`, `natural[:section3]`, `hw:<w>`,
    `kac:<w>`, `dual(<d>)`, `tau(<d>)`, `sym2(<d>)` or `real:m`."""
    text = text.strip()
    wrapped = _WRAPPED.match(text)
    if wrapped:
        op, inner = wrapped.groups()
        M = module_from_descriptor(L, inner)
        if op == "dual":
            return dual_module(M)
        if op == "tau":
            return tau_twist(M)
        return sym_power_eps(M, 2)
    head, _, rest = text.partition(":")
    try:
        if head == "trivial" and not rest:
            return trivial_module(L)
        if head == "adjoint" and not rest:
            return adjoint_module(L)
        if head == "natural":
            return natural_module(L, rest or "standard")
        if head == "hw":
            return simple_module(L, parse_weight(L, rest))
        if head == "kac":
            return kac_module(L, parse_weight(L, rest))
        if head == "real":
            if int(rest) != L.m or L.n != 1:
                raise DescriptorError(f"real:{rest} needs the algebra gl:{rest}:1 or sl:{rest}:1")
            return build_V_realization(L)
    except ModuleError as e:
        raise DescriptorError(f"cannot build {text!r} over {L.descriptor}: {e}") from e
    except ValueError as e:
        if isinstance(e, DescriptorError):
            raise
        raise DescriptorError(f"bad module descriptor {text!r}: {e}") from e
    raise DescriptorError(f"unknown module descriptor {text!r}")


def module_to_record(M: Module) -> dict:
    return {
        "version": CACHE_VERSION,
        "algebra": M.algebra.descriptor,
        "descriptor": M.descriptor,
        "dim": M.dim,
        "parity": list(M.parity),
        "z_degree": [fstr(z) for z in M.z_degree],
        "weights": [w.compact() for w in M.weights],
        "actions": [A.dump() for A in M.actions],
    }


def module_from_record(L: LieSuperalgebra, record: dict) -> Module:
    if record.get("algebra") != L.descriptor:
        raise ModuleError(f"record belongs to {record.get('algebra')}, not {L.descriptor}")
    return Module(
        L,
        record["dim"],
        record["parity"],
        [SparseRationalMatrix.load(text) for text in record["actions"]],
        [Fraction(z) for z in record["z_degree"]],
        record["descriptor"],
    )


class ModuleCache:
    """Stores serialized modules in DuckDB."""

    def __init__(self, cache_dir: Optional[Path] = None):
        self.cache_dir = Path(cache_dir or get_settings().cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.db_path = self.cache_dir / DB_NAME
        self._init_db()

    def _get_conn(self):
        """Get a fresh connection to the database."""
        return duckdb.connect(str(self.db_path))

    def _init_db(self):
        conn = self._get_conn()
        try:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS module_cache (
                    key VARCHAR PRIMARY KEY,
                    version INTEGER,
                    descriptor VARCHAR,
                    dim INTEGER,
                    record VARCHAR,
                    created_at TIMESTAMP
                )
            """)
            conn.commit()
        finally:
            conn.close()

    @staticmethod
    def key(L: LieSuperalgebra, descriptor: str) -> str:
        return f"{L.descriptor}|{descriptor}"

    def get(self, L: LieSuperalgebra, descriptor: str) -> Optional[Module]:
        conn = self._get_conn()
        try:
            row = conn.execute(
                "SELECT version, record FROM module_cache WHERE key = ?",
                [self.key(L, descriptor)],
            ).fetchone()
        finally:
            conn.close()
        if row is None:
            return None
        version, record = row
        if version != CACHE_VERSION:
            logger.debug("cache entry {} has version {}; ignored", descriptor, version)
            return None
        try:
            return module_from_record(L, json.loads(record))
        except (KeyError, ValueError) as e:
            logger.warning("unreadable cache entry {}: {}", descriptor, e)
            return None

    def put(self, M: Module, descriptor: Optional[str] = None) -> None:
        descriptor = descriptor or M.descriptor
        key = self.key(M.algebra, descriptor)
        record = json.dumps(module_to_record(M))
        conn = self._get_conn()
        try:
            conn.execute("DELETE FROM module_cache WHERE key = ?", [key])
            conn.execute(
                """
                INSERT INTO module_cache (key, version, descriptor, dim, record, created_at)
                VALUES (?, ?, ?, ?, ?, ?)
                """,
                [key, CACHE_VERSION, descriptor, M.dim, record, datetime.now()],
            )
            conn.commit()
            logger.debug("cached {} (dim {})", key, M.dim)
        finally:
            conn.close()

    def remove(self, L: LieSuperalgebra, descriptor: str) -> None:
        conn = self._get_conn()
        try:
            conn.execute("DELETE FROM module_cache WHERE key = ?", [self.key(L, descriptor)])
            conn.commit()
        finally:
            conn.close()

    def clear(self) -> int:
        conn = self._get_conn()
        try:
            count = conn.execute("SELECT COUNT(*) FROM module_cache").fetchone()[0]
            conn.execute("DELETE FROM module_cache")
            conn.commit()
            return count
        finally:
            conn.close()

    def keys(self) -> list:
        conn = self._get_conn()
        try:
            return [r[0] for r in conn.execute("SELECT key FROM module_cache ORDER BY key").fetchall()]
        finally:
            conn.close()

    def fetch(self, L: LieSuperalgebra, descriptor: str,
              build: Optional[Callable[[], Module]] = None) -> Module:
        """Cached module, built and stored on a miss."""
        M = self.get(L, descriptor)
        if M is not None:
            return M
        M = build() if build is not None else module_from_descriptor(L, descriptor)
        self.put(M, descriptor)
        return M

    def simple_module_source(self) -> Callable[[LieSuperalgebra, Weight], Module]:
        """A `simple_module` replacement backed by this cache."""
        def source(L: LieSuperalgebra, weight: Weight) -> Module:
            return self.fetch(L, f"hw:{weight.compact()}", lambda: simple_module(L, weight))
        return source


def cached_module(L: LieSuperalgebra, descriptor: str, cache: Optional[ModuleCache] = None) -> Module:
    if cache is None:
        return module_from_descriptor(L, descriptor)
    return cache.fetch(L, descriptor)

