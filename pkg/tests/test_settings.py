import pytest

from twisted_link import DEFAULT_SETTINGS, PropertyError, Settings


def test_defaults():
    assert DEFAULT_SETTINGS.closure_cap == 20000
    assert DEFAULT_SETTINGS.truncation_level == 4
    assert DEFAULT_SETTINGS.workers == 1
    assert DEFAULT_SETTINGS.get('seed') == 0


def test_values_are_coerced():
    assert Settings({'closure_cap': '5'}).closure_cap == 5


@pytest.mark.parametrize("params", [
    {'closure_cap': 0},
    {'workers': True},
    {'seed': 'x'},
    {'no_such_setting': 1},
])
def test_rejected(params):
    with pytest.raises(PropertyError):
        Settings(params)


def test_from_env():
    environ = {'TWISTED_LINK_SEED': '7', 'TWISTED_LINK_TRUNCATION_LEVEL': '2', 'UNRELATED': 'x'}
    settings = Settings.from_env(environ=environ)
    assert settings.seed == 7
    assert settings.truncation_level == 2
    assert Settings.from_env({'seed': 3}, environ=environ).seed == 3


def test_updated_skips_none():
    settings = Settings({'seed': 4}).updated({'seed': None, 'workers': 3})
    assert settings.seed == 4
    assert settings.workers == 3
    assert "workers" in repr(settings)
