from fractions import Fraction

import pytest

import segre


def test_generate_and_membership():
    inst = segre.Instance.generate(2, 2, seed=7)
    assert inst.shape == (2, 2)
    assert inst.quadric_count == 1
    v = inst.sample_simple(seed=3)
    assert all(isinstance(x, Fraction) for x in v)
    assert inst.is_simple(v)
    assert inst.is_simple([0, 0, 0, 0])
    assert inst.tangent_dim(v) == 3


def test_entangled_vector_is_not_simple():
    inst = segre.Instance.generate(2, 2, seed=7)
    bell = [a + b for a, b in zip(inst.embed([1, 0], [1, 0]), inst.embed([0, 1], [0, 1]))]
    assert not inst.is_simple(bell)


def test_spin_values():
    for (m, n), expected in {(4, 3): 6, (2, 6): 7}.items():
        inst = segre.Instance.generate(m, n, seed=1)
        assert inst.tangent_dim(inst.sample_simple(seed=2)) == expected


def test_recover_round_trip():
    inst = segre.Instance.generate(4, 3, seed=1, pointed=True)
    recon = segre.recover_factors(inst, seed=5)
    assert recon.sheet_dims == (4, 3)
    report = recon.verify()
    assert report["success"]
    assert report["sheet_dims"] == [4, 3]
    v = inst.sample_simple(seed=9)
    w1, w2 = recon.factorize(v)
    assert recon.bar_tensor(w1, w2) == v
    assert recon.tensor_rank(v) == 1


def test_trivial_shape():
    inst = segre.Instance.generate(1, 5, seed=2)
    recon = segre.recover_factors(inst)
    assert recon.trivial
    assert recon.sheet_dims == (5, 1)


def test_complete_square_matches_embedding():
    inst = segre.Instance.generate(3, 2, seed=4)
    a = inst.embed([1, 2, 0], [1, 1])
    b = inst.embed([1, 2, 0], [0, 1])
    c = inst.embed([0, 1, 1], [1, 1])
    d, t, kind = segre.complete_square(inst, a, b, c)
    assert kind == "generic"
    assert d == inst.embed([0, 1, 1], [0, 1])
    assert t != 0


def test_scalars_accept_strings():
    inst = segre.Instance.generate(2, 2, seed=7)
    v = inst.embed(["1/2", 1], [3, "-2/3"])
    assert inst.is_simple([str(x) for x in v])


def test_json_round_trip():
    inst = segre.Instance.generate(2, 3, seed=11, pointed=True)
    again = segre.Instance.from_json(inst.to_json())
    assert again.to_json() == inst.to_json()
    assert again.base_point == inst.base_point
    with pytest.raises(segre.Error):
        segre.Instance.from_json('{"m": 2}')


def test_errors_surface():
    inst = segre.Instance.generate(2, 2, seed=7)
    with pytest.raises(segre.Error):
        inst.is_simple([1, 2, 3])


def test_props_suite():
    results = segre.run_props("lemmas", trials=5, seed=1)
    assert results and all(r["ok"] for r in results)
