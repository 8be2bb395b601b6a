import pytest

from wmds.action import ActionContext
from wmds.presets import ALL_PRESETS, preset
from wmds.verify import check_involution_braid, check_local_fe, run_verify


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_run_verify_all_presets(name):
    rep = run_verify(name, cap=5)
    assert rep["ok"], {k: v for k, v in rep.items() if isinstance(v, dict) and not v["ok"]}


def test_wrong_fe_exponent_is_caught(monkeypatch):
    orig = ActionContext.fe_exponent
    monkeypatch.setattr(ActionContext, "fe_exponent", lambda self, beta, i: orig(self, beta, i) + 1)
    assert not check_local_fe(preset("a2-n2"), 2, 5)["ok"]


def test_wrong_action_is_caught(monkeypatch):
    orig = ActionContext.monomial_image

    def broken(self, beta, i):
        terms = orig(self, beta, i)
        return terms[:1] + [(b, -c) for b, c in terms[1:]]

    monkeypatch.setattr(ActionContext, "monomial_image", broken)
    assert not check_involution_braid(preset("a2-n2"), cap=4, max_d=2)["ok"]
