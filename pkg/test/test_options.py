from fractions import Fraction
from pathlib import Path

import pytest

import reebcomp
import reebcomp.options
from reebcomp.options import format_rational, to_rational


def test_to_rational_is_exact():
    assert to_rational('0.1') == Fraction(1, 10)
    assert to_rational(0.1) == Fraction(1, 10)
    assert to_rational('3/4') == Fraction(3, 4)
    assert to_rational(7) == 7
    with pytest.raises(ValueError):
        to_rational('nan')
    with pytest.raises(TypeError):
        to_rational(None)


@pytest.mark.parametrize('value, text', [
    (Fraction(3), '3'),
    (Fraction(-1, 2), '-0.5'),
    (Fraction(3, 8), '0.375'),
    (Fraction(1, 3), '1/3'),
])
def test_format_rational(value, text):
    assert format_rational(value) == text
    # formatted values always parse back exactly
    assert to_rational(text) == value


def test_builtin_field_defaults_and_validation():
    spec = reebcomp.BuiltinField('eq2')
    assert spec.extent == 3
    assert spec.resolution == 64
    spec.resolution = 8
    assert spec.resolution == 8
    # None means "back to the default"
    spec.resolution = None
    assert spec.resolution == 64
    with pytest.raises(reebcomp.ConfigError):
        spec.resolution = 1
    with pytest.raises(reebcomp.ConfigError):
        spec.resolution = 2.5
    with pytest.raises(reebcomp.ConfigError):
        spec.extent = 0
    with pytest.raises(reebcomp.ConfigError):
        reebcomp.BuiltinField('no-such-field')


def test_none_restores_every_default():
    plan = reebcomp.SamplePlan(resolution=16)
    assert plan.margin == reebcomp.SamplePlan.margin.default
    assert plan.margin is not None
    config = reebcomp.RunConfig(builtin='eq2')
    for name in ('resolution', 'simplify', 'measure', 'mode', 'side'):
        assert getattr(config, name) == getattr(reebcomp.RunConfig, name).default
    spec = reebcomp.BuiltinField('diamond', resolution=6)
    spec.extent = 5
    spec.extent = None
    assert spec.extent == 3
    assert '_opt_extent' not in vars(spec)


def test_config_errors_are_value_errors():
    with pytest.raises(ValueError):
        reebcomp.SamplePlan(resolution=-3)


def test_int_option_accepts_integral_floats_and_strings():
    plan = reebcomp.SamplePlan(resolution=16.0, seed='7')
    assert plan.resolution == 16
    assert plan.seed == 7
    with pytest.raises(reebcomp.ConfigError):
        plan.seed = True


def test_choice_option_accepts_enum_names():
    measure = reebcomp.ImportanceMeasure('size', '1/2')
    assert measure.kind is reebcomp.Measure.SIZE
    assert measure.threshold == Fraction(1, 2)
    measure.kind = reebcomp.Measure.PERSISTENCE
    assert measure.kind is reebcomp.Measure.PERSISTENCE
    with pytest.raises(reebcomp.ConfigError):
        measure.kind = 'volume'
    with pytest.raises(reebcomp.ConfigError):
        measure.threshold = -1


def test_run_config_paths_and_input_check():
    config = reebcomp.RunConfig(builtin='diamond-pair', output='out.json')
    assert config.output == Path('out.json')
    config.check()
    with pytest.raises(reebcomp.ConfigError):
        reebcomp.RunConfig().check()
    with pytest.raises(reebcomp.ConfigError):
        reebcomp.RunConfig(mesh='a.rcm', builtin='eq2').check()
    with pytest.raises(reebcomp.ConfigError):
        reebcomp.RunConfig(builtin='eq2', colour='red')


def test_default_workers_reads_environment(monkeypatch):
    monkeypatch.delenv('REEBCOMP_WORKERS', raising=False)
    assert reebcomp.options.default_workers() == 1
    monkeypatch.setenv('REEBCOMP_WORKERS', '4')
    assert reebcomp.options.default_workers() == 4
    monkeypatch.setenv('REEBCOMP_WORKERS', 'many')
    with pytest.raises(reebcomp.ConfigError):
        reebcomp.options.default_workers()


def test_exception_codes():
    assert reebcomp.ParseError('bad', 3, 'x.rcm').code == 'EPARSE'
    assert str(reebcomp.ParseError('bad', 3, 'x.rcm')) == 'x.rcm:3: bad'
    with pytest.raises(reebcomp.OutsideArc) as info:
        reebcomp.raise_for('ERANGE', 'too high')
    assert info.value.code == 'ERANGE'
    with pytest.raises(reebcomp.ReebComplementException) as info:
        reebcomp.raise_for('EWHATEVER', 'unknown')
    assert info.value.code == 'EWHATEVER'
