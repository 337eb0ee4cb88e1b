from fractions import Fraction

import pytest

from qhk.checks import (ANCHORS, CHECKS, MUTATIONS, SizeGuardError, check_corollary, check_lemma1,
                        check_lemma2, check_lemma3, check_schur, check_structure, check_trace_identities,
                        kernel_oracle, run_all)


def test_lemma_checks_pass_at_n2():
    for fn in (check_lemma1, check_lemma2, check_lemma3, check_corollary):
        r = fn(2)
        assert r.status == "pass", r.details


def test_lambda3_subcheck_is_vacuous_at_n2_only():
    assert check_lemma3(2).details["subchecks"]["S3H Lambda3_0 E component"] == "vacuous"
    assert check_lemma3(3).details["subchecks"]["S3H Lambda3_0 E component"] == "pass"


def test_lemma2_values():
    want = {2: "16/5", 3: "56/15", 4: "288/65"}
    for n, v in want.items():
        assert check_lemma2(n).actual["coefficient of h e_2"] == v


def test_structure_and_traces():
    assert check_structure(3).status == "pass"
    assert check_trace_identities(3, samples=5).status == "pass"


def test_schur_constants_are_nonzero_at_n3():
    r = check_schur(3)
    assert r.status == "pass"
    assert set(r.details["constants"]) == {"HE", "HK", "S3HE", "S3HL3"}
    assert all(Fraction(v) != 0 for v in r.details["constants"].values())


def test_kernel_oracle_n2():
    k = kernel_oracle(2)
    assert k.status == "pass" and k.reverified
    assert k.domainDim == 120 and k.kernelDim <= k.bound == 64
    assert k.details["ambient kernel dim"] == k.details["ambient kernel expected"] == 112


def test_kernel_size_guard():
    with pytest.raises(SizeGuardError):
        kernel_oracle(5)


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_mutations_break_a_lemma(name):
    v = MUTATIONS[name](2)
    statuses = [fn(2, v).status for fn in (check_lemma1, check_lemma2, check_lemma3, check_corollary)]
    assert "fail" in statuses


def test_mutated_operator_changes_the_ambient_kernel():
    k = kernel_oracle(2, variant=MUTATIONS["coef-b"](2))
    assert k.details["ambient kernel dim"] != k.details["ambient kernel expected"]
    assert k.status == "fail"


def test_every_check_has_an_anchor():
    assert set(ANCHORS) == set(CHECKS)
    assert all(r.details["anchor"] for r in run_all([2], ("lemma1", "lemma2"))[0])


def test_run_all_rejects_unknown_checks():
    with pytest.raises(ValueError):
        run_all([2], ("nonsense",))
