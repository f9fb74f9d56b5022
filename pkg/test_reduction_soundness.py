"""
Reduction soundness against the brute-force oracle on small random graphs
"""
from itertools import product

import numpy as np

from core.instance import NoInstance, Params, build_instance
from generators.planted import random_instance
from oracle.partitions import oracle_for_instance, oracle_minimum
from reduction.driver import reduce

PARAM_GRID = [(a, d, s) for a, d, s in product((0, 1, 2), (0, 1, 2), (1, 2, 3))]
BUDGETS = tuple(range(7))


def _graphs(count=40, seed=5):
    rng = np.random.default_rng(seed)
    for index in range(count):
        n = int(rng.integers(4, 8))
        p = float(rng.choice([0.3, 0.5, 0.5, 0.7]))
        yield random_instance(n, p, seed=seed * 1000 + index)


def test_feasibility_and_cost_preserved_for_every_budget():
    """With budget k the rules keep feasibility, and charged edits plus the residual optimum give the true optimum"""
    print("Testing reduction soundness with a global budget...")
    checked = 0
    for n, edges in _graphs(count=500):
        for a, d, s in PARAM_GRID:
            direct = oracle_minimum(n, edges, Params(a=a, d=d, s=s))
            for k in BUDGETS:
                expected = direct.feasible and direct.min_cost <= k
                outcome = reduce(build_instance(n, edges, Params(a=a, d=d, s=s, k=k)))
                if isinstance(outcome, NoInstance):
                    assert not expected, f"n={n} {edges} a={a} d={d} s={s} k={k}: rules said {outcome.reason}"
                else:
                    residual = oracle_for_instance(outcome.instance)
                    case = f"n={n} {edges} a={a} d={d} s={s} k={k}"
                    assert residual.feasible == expected, case
                    if expected:
                        charged = len(outcome.instance.edit_log)
                        assert charged + residual.min_cost == direct.min_cost, case
                checked += 1
    assert checked == 500 * len(PARAM_GRID) * len(BUDGETS)
    print(f"✓ {checked} reductions agree with the oracle!")


def test_minimum_preserved_without_budget():
    """Without k the edits made by the rules plus the residual optimum give the true optimum"""
    print("\nTesting reduction soundness without a global budget...")
    for n, edges in _graphs(seed=6):
        for a, d, s in PARAM_GRID:
            params = Params(a=a, d=d, s=s)
            direct = oracle_minimum(n, edges, params)
            outcome = reduce(build_instance(n, edges, params))
            if isinstance(outcome, NoInstance):
                assert not outcome.budget_limited
                assert not direct.feasible, f"n={n} {edges} a={a} d={d} s={s}: rules said {outcome.reason}"
                continue
            residual = oracle_for_instance(outcome.instance)
            assert residual.feasible == direct.feasible
            if direct.feasible:
                assert len(outcome.instance.edit_log) + residual.min_cost == direct.min_cost
    print("✓ Minimum cost preserved!")


def test_per_vertex_overrides_respected():
    """Vertices with their own budgets reduce soundly too"""
    rng = np.random.default_rng(9)
    for n, edges in _graphs(count=20, seed=7):
        for a, d, s in PARAM_GRID[::3]:
            alpha = {int(v): int(rng.integers(0, a + 1)) for v in rng.choice(n, size=2, replace=False)}
            delta = {int(v): int(rng.integers(0, d + 1)) for v in rng.choice(n, size=2, replace=False)}
            params = Params(a=a, d=d, s=s, k=3)
            direct = oracle_minimum(n, edges, params, alpha=alpha, delta=delta)
            outcome = reduce(build_instance(n, edges, params, alpha_overrides=alpha, delta_overrides=delta))
            if isinstance(outcome, NoInstance):
                assert not direct.feasible
            else:
                assert oracle_for_instance(outcome.instance).feasible == direct.feasible


def main():
    """Run all tests."""
    print("=" * 60)
    print("Reduction Soundness Tests")
    print("=" * 60)

    try:
        test_feasibility_and_cost_preserved_for_every_budget()
        test_minimum_preserved_without_budget()
        test_per_vertex_overrides_respected()

        print("\n" + "=" * 60)
        print("✅ All tests passed!")
        print("=" * 60)
    except Exception as e:
        print(f"\n❌ Test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1

    return 0


if __name__ == "__main__":
    exit(main())
