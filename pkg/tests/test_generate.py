import pytest

from hpcause.generate import (SHAPES, GeneratorConfig, caterpillar, generate_instance, generate_model,
                              layered_chain, sparse_dag)
from hpcause.graph import endogenous_graph
from hpcause.io import model_to_json
from hpcause.layered import detect_layered
from hpcause.tree import detect_tree


def test_deterministic():
    cfg = GeneratorConfig(shape="layered", layer_width=2, n_layers=3, seed=7)
    assert model_to_json(generate_model(cfg)) == model_to_json(generate_model(cfg))


def test_seed_changes_model():
    a = generate_model(GeneratorConfig(shape="random-dag", n_vars=6, seed=1))
    b = generate_model(GeneratorConfig(shape="random-dag", n_vars=6, seed=2))
    assert model_to_json(a) != model_to_json(b)


@pytest.mark.parametrize("seed", range(20))
def test_shape_guarantees(seed):
    t = generate_instance(GeneratorConfig(shape="tree", n_vars=7, max_domain=3, seed=seed))
    assert detect_tree(t.model, "X", "Y") is not None
    lay = generate_instance(GeneratorConfig(shape="layered", layer_width=3, n_layers=2, seed=seed))
    assert detect_layered(lay.model, lay.cause, "Y") is not None
    c = generate_instance(GeneratorConfig(shape="chain", n_vars=5, seed=seed))
    assert detect_tree(c.model, "X", c.effect) is not None


@pytest.mark.parametrize("shape", SHAPES)
def test_bounds_honored(shape):
    for seed in range(10):
        cfg = GeneratorConfig(shape=shape, n_vars=6, max_domain=3, max_in_degree=2, seed=seed)
        m = generate_model(cfg)
        assert all(len(m.domain(v)) <= 3 for v in m.endogenous)
        g = endogenous_graph(m)
        assert all(len([e for e in g.edges if e[1] == v]) <= 2 for v in m.endogenous)


def test_infeasible_configs():
    with pytest.raises(ValueError):
        GeneratorConfig(n_vars=0)
    with pytest.raises(ValueError):
        GeneratorConfig(max_domain=0)
    with pytest.raises(ValueError):
        GeneratorConfig(shape="grid")
    with pytest.raises(ValueError):
        generate_instance(GeneratorConfig(shape="tree", n_vars=1))
    with pytest.raises(ValueError):
        sparse_dag(0)


def test_fixed_families():
    lc = layered_chain(4)
    assert len(lc.model.endogenous) == 9
    assert detect_layered(lc.model, lc.cause, "Y").k == 4
    cat = caterpillar(4)
    assert detect_tree(cat.model, "X", "Y").k == 4
    sd = sparse_dag(50, seed=3)
    assert len(sd.model.endogenous) == 50
    assert model_to_json(sd.model) == model_to_json(sparse_dag(50, seed=3).model)
