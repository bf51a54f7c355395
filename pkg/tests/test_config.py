import pytest
from hypothesis import given, strategies as st

from ffbias.config import ConfigError, RunConfig, load_config, parse_config_text, parse_k_mode, parse_range


def test_empty_file_gives_defaults(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("")
    cfg = load_config(p)
    assert cfg == RunConfig()
    assert (cfg.q, cfg.cutoff, cfg.n_cap, cfg.enum_cap) == (3, 12, 300, 2**24)


def test_override_and_comments(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# comment\nq = 5\nmodulus = t^2+2  # trailing\nenum-cap = 5^10\nchar_index = all\n")
    cfg = load_config(p)
    assert cfg.q == 5 and cfg.modulus == "t^2+2" and cfg.enum_cap == 5**10 and cfg.char_index is None
    assert load_config(p, q=3).q == 3


def test_unknown_key_is_an_error():
    with pytest.raises(ConfigError, match="f.cfg:2: unknown key"):
        parse_config_text("q = 3\ncolour = blue\n", "f.cfg")


@pytest.mark.parametrize("text", ["q 3", "q =", "n-range = 5", "cutoff = x"])
def test_malformed_lines_report_line_number(text):
    with pytest.raises(ConfigError, match=r"<config>:1:"):
        parse_config_text(text)


@pytest.mark.parametrize("kwargs", [
    {"modulus": "2*t^2+1"},
    {"n_range": (5, 2, 1)},
    {"n_range": (1, 5, 0)},
    {"cutoff": 0},
    {"rh_tol": 0.0},
    {"method": "guess"},
    {"k_mode": "scaled:-1"},
    {"q": 4},
])
def test_invalid_configs(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


@given(st.integers(0, 500), st.integers(0, 500), st.integers(1, 50))
def test_parse_range(a, b, s):
    assert parse_range(f"{a}:{b}:{s}") == (a, b, s)
    assert parse_range(f"{a}:{b}") == (a, b, 1)


def test_k_mode():
    assert parse_k_mode("fixed:3") == ("fixed", 3)
    assert parse_k_mode("scaled:1.4") == ("scaled", 1.4)
    for bad in ("fixed:0", "fixed:1.5", "other:1", "scaled"):
        with pytest.raises(ConfigError):
            parse_k_mode(bad)
