import pytest
import json
import sys
import os

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from cohom_algebra import Weight, build_algebra
from cohom_cache import (
    ModuleCache,
    cached_module,
    module_from_descriptor,
    module_from_record,
    module_to_record,
    parse_weight,
)
from cohom_config import DescriptorError, ModuleError
from cohom_modules import (
    adjoint_module,
    check_representation,
    natural_module,
    simple_module,
    weight_multiset,
)


@pytest.fixture(scope="module")
def sl21():
    return build_algebra("sl", 2, 1)


@pytest.fixture
def cache(tmp_path):
    return ModuleCache(tmp_path / "cache")


def same_module(A, B):
    return (A.dim == B.dim and list(A.parity) == list(B.parity)
            and A.actions == B.actions and weight_multiset(A) == weight_multiset(B))


@pytest.mark.parametrize("text,dim", [
    ("trivial", 1),
    ("adjoint", 8),
    ("natural", 3),
    ("dual(natural)", 3),
    ("tau(natural)", 3),
    ("sym2(natural)", 5),
    ("hw:(0,0|0)", 1),
    ("hw:0,-1/1", 3),
    ("kac:(0,0|0)", 4),
    ("real:2", 3),
])
def test_descriptor_grammar(sl21, text, dim):
    M = module_from_descriptor(sl21, text)
    assert M.dim == dim
    assert check_representation(M) == []


@pytest.mark.parametrize("text", [
    "spinor",
    "trivial:1",
    "hw:(1,0,0|-1)",
    "hw:(1|0)",
    "hw:(1,0|0)",
    "hw:(a,b|c)",
    "natural:other",
    "real:3",
    "real:x",
    "dual(spinor)",
])
def test_bad_descriptors(sl21, text):
    with pytest.raises(DescriptorError):
        module_from_descriptor(sl21, text)


def test_descriptor_errors_are_value_errors(sl21):
    with pytest.raises(ValueError):
        module_from_descriptor(sl21, "nonsense")


def test_parse_weight_checks_shape(sl21):
    assert parse_weight(sl21, "(1,0|-1)") == Weight.parse("1,0/-1")
    with pytest.raises(DescriptorError):
        parse_weight(sl21, "(1,0,0|-1)")


def test_record_round_trip(sl21):
    M = adjoint_module(sl21)
    record = json.loads(json.dumps(module_to_record(M)))
    assert record["dim"] == 8
    N = module_from_record(sl21, record)
    assert same_module(M, N)
    with pytest.raises(ModuleError):
        module_from_record(build_algebra("gl", 2, 1), record)


def test_put_get_remove(sl21, cache):
    assert cache.get(sl21, "natural") is None
    M = natural_module(sl21)
    cache.put(M, "natural")
    assert cache.keys() == ["sl:2:1|natural"]
    assert same_module(cache.get(sl21, "natural"), M)
    # overwriting keeps a single row
    cache.put(M, "natural")
    assert len(cache.keys()) == 1
    cache.remove(sl21, "natural")
    assert cache.get(sl21, "natural") is None


def test_clear_counts_entries(sl21, cache):
    cache.put(natural_module(sl21), "natural")
    cache.put(adjoint_module(sl21), "adjoint")
    assert cache.clear() == 2
    assert cache.keys() == []


def test_version_mismatch_is_a_miss(sl21, cache):
    cache.put(natural_module(sl21), "natural")
    conn = cache._get_conn()
    try:
        conn.execute("UPDATE module_cache SET version = 0")
        conn.commit()
    finally:
        conn.close()
    assert cache.get(sl21, "natural") is None


def test_fetch_builds_once(sl21, cache):
    calls = []

    def build():
        calls.append(1)
        return adjoint_module(sl21)

    first = cache.fetch(sl21, "adjoint", build)
    second = cache.fetch(sl21, "adjoint", build)
    assert len(calls) == 1
    assert same_module(first, second)


def test_cache_persists_across_instances(sl21, tmp_path):
    ModuleCache(tmp_path).fetch(sl21, "hw:(0,-1|1)")
    assert ModuleCache(tmp_path).get(sl21, "hw:(0,-1|1)") is not None


def test_simple_module_source(sl21, cache):
    source = cache.simple_module_source()
    w = Weight.parse("(0,-1|1)")
    M = source(sl21, w)
    assert same_module(M, simple_module(sl21, w))
    assert cache.keys() == ["sl:2:1|hw:0,-1/1"]


def test_cached_module_without_cache(sl21):
    assert cached_module(sl21, "trivial").dim == 1
