import pytest

from polarfol.lemmas import IDENTITIES, run_identity_suite


@pytest.mark.parametrize("n", [2, 3, 4])
def test_all_identities_pass(n):
    res = run_identity_suite(n, trials=20)
    assert [r.name for r in res] == [name for name, _ in IDENTITIES]
    assert all(r.passed for r in res), [r.detail for r in res if not r.passed]
    assert all(r.checked > 0 for r in res)
