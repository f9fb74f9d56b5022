"""
Tests for the annotated instance model and solution checking
"""
import numpy as np

from core.instance import (
    Edit,
    EditError,
    EditKind,
    InstanceError,
    NoInstance,
    PairState,
    Params,
    apply_edit,
    build_instance,
    components,
    find_conflict_triple,
    pair_state,
)
from core.solution import Solution, Verdict, validate_solution
from oracle.partitions import oracle_minimum

P3 = [(0, 1), (1, 2)]


def _p3(**params):
    values = {"a": 1, "d": 1, "s": 1, "k": 1}
    values.update(params)
    return build_instance(3, P3, Params(**values))


def test_build_instance():
    """Fresh instances mark edges as Edge and everything else NonEdge"""
    print("Testing build_instance...")
    inst = _p3()
    assert pair_state(inst, 0, 1) is PairState.EDGE
    assert pair_state(inst, 1, 2) is PairState.EDGE
    assert pair_state(inst, 0, 2) is PairState.NON_EDGE
    assert inst.residual_k == 1
    assert inst.edit_log == []
    assert list(inst.alpha) == [1, 1, 1]
    assert list(inst.delta) == [1, 1, 1]

    edgeless = build_instance(3, [], Params(a=0, d=0, s=1, k=0))
    parts, is_cluster = components(edgeless)
    assert parts == [(0,), (1,), (2,)]
    assert is_cluster

    overridden = build_instance(3, P3, Params(a=2, d=1), alpha_overrides={1: 0}, delta_overrides={2: 0})
    assert list(overridden.alpha) == [2, 0, 2]
    assert list(overridden.delta) == [1, 1, 0]
    print("✓ build_instance works!")


def test_build_instance_errors():
    """Malformed input raises InstanceError, not a no-instance"""
    print("\nTesting build_instance errors...")
    bad_inputs = [
        (2, [(0, 0)], {}, "Self-loop"),
        (3, [(0, 3)], {}, "outside"),
        (3, [(0, 1), (1, 0)], {}, "Duplicate"),
        (3, [], {"alpha_overrides": {0: 2}}, "alpha override"),
        (3, [], {"delta_overrides": {4: 0}}, "outside"),
    ]
    for n, edges, overrides, message in bad_inputs:
        try:
            build_instance(n, edges, Params(a=1, d=1), **overrides)
            assert False, f"Should have rejected {edges} {overrides}"
        except InstanceError as e:
            assert message in str(e)
    print("✓ Construction errors detected!")


def test_params_validation():
    """Params rejects negative budgets and s < 1"""
    for values in ({"a": -1, "d": 0}, {"a": 0, "d": -1}, {"a": 0, "d": 0, "s": 0}, {"a": 0, "d": 0, "k": -1}):
        try:
            Params(**values)
            assert False, f"Should have rejected {values}"
        except ValueError:
            pass
    assert Params(a=1, d=3).clique_cap == 6
    assert Params(a=5, d=1).clique_cap == 5


def test_edit_normalizes_endpoints():
    edit = Edit.delete(2, 0)
    assert edit.pair == (0, 2)
    assert edit.kind is EditKind.DELETE
    assert str(edit) == "del 0 2"
    try:
        Edit.add(1, 1)
        assert False, "Should have rejected a loop"
    except EditError:
        pass


def test_apply_edit_bookkeeping():
    """Deletions forbid the pair, additions make it permanent, budgets shrink"""
    print("\nTesting apply_edit...")
    inst = _p3()
    assert apply_edit(inst, Edit.delete(1, 2)) is inst
    assert pair_state(inst, 1, 2) is PairState.FORBIDDEN
    assert inst.delta[1] == 0 and inst.delta[2] == 0
    assert inst.residual_k == 0
    assert inst.edit_log == [Edit.delete(1, 2)]

    inst = _p3()
    apply_edit(inst, Edit.add(0, 2))
    assert pair_state(inst, 0, 2) is PairState.PERMANENT
    assert pair_state(inst, 2, 0) is PairState.PERMANENT
    assert inst.alpha[0] == 0 and inst.alpha[2] == 0
    assert inst.residual_k == 0
    print("✓ apply_edit bookkeeping works!")


def test_apply_edit_failures():
    """Underflow and contradictions yield NoInstance, wrong states raise"""
    inst = build_instance(3, P3, Params(a=1, d=1, k=1), delta_overrides={1: 0})
    outcome = apply_edit(inst, Edit.delete(0, 1))
    assert isinstance(outcome, NoInstance)
    assert outcome.reason == "rule1"
    assert not outcome.budget_limited

    inst = _p3(k=0)
    outcome = apply_edit(inst, Edit.delete(0, 1))
    assert isinstance(outcome, NoInstance)
    assert outcome.budget_limited

    inst = _p3(k=None)
    inst.set_state(0, 1, PairState.PERMANENT)
    outcome = apply_edit(inst, Edit.delete(0, 1))
    assert isinstance(outcome, NoInstance)
    assert outcome.reason == "contradiction"

    inst = _p3()
    for edit in (Edit.add(0, 1), Edit.delete(0, 2)):
        try:
            apply_edit(inst, edit)
            assert False, f"Should have rejected {edit}"
        except EditError:
            pass


def test_budget_conservation():
    """Budget decrements always match the edits in the log"""
    inst = build_instance(5, [(0, 1), (1, 2), (2, 3), (3, 4)], Params(a=2, d=2, k=6))
    for edit in (Edit.delete(1, 2), Edit.add(0, 2), Edit.add(3, 0), Edit.delete(3, 4)):
        assert apply_edit(inst, edit) is inst
    added = np.zeros(5, dtype=int)
    deleted = np.zeros(5, dtype=int)
    for edit in inst.edit_log:
        counts = added if edit.kind is EditKind.ADD else deleted
        counts[edit.u] += 1
        counts[edit.v] += 1
    assert list(inst.initial_budgets.alpha - inst.alpha) == list(added)
    assert list(inst.initial_budgets.delta - inst.delta) == list(deleted)
    assert inst.residual_k == 6 - len(inst.edit_log)
    assert (inst.states == inst.states.T).all()


def test_pair_state_errors():
    inst = _p3()
    for u, v in ((1, 1), (0, 3)):
        try:
            pair_state(inst, u, v)
            assert False, f"Should have rejected pair {u}-{v}"
        except ValueError:
            pass


def test_find_conflict_triple():
    """Smallest conflict triple, centre first"""
    print("\nTesting find_conflict_triple...")
    assert find_conflict_triple(_p3()) == (1, 0, 2)
    triangle = build_instance(3, [(0, 1), (0, 2), (1, 2)], Params(a=1, d=1))
    assert find_conflict_triple(triangle) is None
    two_k2 = build_instance(4, [(0, 1), (2, 3)], Params(a=1, d=1))
    assert find_conflict_triple(two_k2) is None
    star = build_instance(4, [(0, 3), (1, 3), (2, 3)], Params(a=1, d=1))
    assert find_conflict_triple(star) == (3, 0, 1)
    print("✓ find_conflict_triple works!")


def test_components():
    triangles = build_instance(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)], Params(a=1, d=1))
    assert components(triangles) == ([(0, 1, 2), (3, 4, 5)], True)
    assert components(_p3()) == ([(0, 1, 2)], False)


def test_conflict_triple_matches_cluster_flag():
    """No conflict triple exactly when every component is a clique"""
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        inst = build_instance(n, edges, Params(a=1, d=1))
        _, is_cluster = components(inst)
        assert (find_conflict_triple(inst) is None) == is_cluster


def test_validate_solution():
    """Checks run in order and report the first violation"""
    print("\nTesting validate_solution...")
    report = validate_solution(3, P3, [Edit.delete(1, 2)], Params(a=1, d=1, s=1, k=1))
    assert report.valid
    assert report.clusters == [(0, 1), (2,)]

    report = validate_solution(3, P3, [Edit.add(0, 2)], Params(a=0, d=1))
    assert not report.valid
    assert report.reason == "alpha exceeded at vertex 0"

    report = validate_solution(3, P3, [Edit.delete(1, 2)], Params(a=1, d=1, s=2))
    assert not report.valid
    assert "size 1 < 2" in report.reason

    report = validate_solution(3, P3, [Edit.delete(1, 2), Edit.delete(2, 1)], Params(a=1, d=1))
    assert not report.valid and "twice" in report.reason

    report = validate_solution(3, P3, [Edit.add(0, 1)], Params(a=1, d=1))
    assert not report.valid and "existing" in report.reason

    report = validate_solution(3, P3, [], Params(a=1, d=1))
    assert not report.valid and "not a clique" in report.reason

    report = validate_solution(3, P3, [Edit.delete(0, 1), Edit.delete(1, 2)], Params(a=1, d=2, k=1))
    assert not report.valid and "k=1" in report.reason
    print("✓ validate_solution works!")


def test_validation_agrees_with_oracle():
    """Every minimum-cost witness of the oracle validates with its own script"""
    from oracle.partitions import script_for_partition

    edges = [(0, 1), (1, 2), (2, 3), (0, 2)]
    params = Params(a=1, d=1, s=1)
    result = oracle_minimum(4, edges, params)
    assert result.feasible
    for witness in result.witnesses:
        script = script_for_partition(4, edges, witness)
        assert len(script) == result.min_cost
        report = validate_solution(4, edges, script, params)
        assert report.valid
        assert report.clusters == sorted(witness)


def test_solution_constructors():
    yes = Solution.yes([Edit.delete(1, 2)], [(2,), (1, 0)])
    assert yes.verdict is Verdict.YES
    assert yes.clusters == [(0, 1), (2,)]
    assert yes.cost == 1
    no = Solution.no("rule9")
    assert not no.is_yes
    assert no.cost is None


def main():
    """Run all tests."""
    print("=" * 60)
    print("Instance Model Tests")
    print("=" * 60)

    try:
        test_build_instance()
        test_build_instance_errors()
        test_params_validation()
        test_edit_normalizes_endpoints()
        test_apply_edit_bookkeeping()
        test_apply_edit_failures()
        test_budget_conservation()
        test_pair_state_errors()
        test_find_conflict_triple()
        test_components()
        test_conflict_triple_matches_cluster_flag()
        test_validate_solution()
        test_validation_agrees_with_oracle()
        test_solution_constructors()

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
