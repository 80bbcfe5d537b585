import numpy as np
import pytest

from common import (
    AccuracyError,
    AliasingError,
    ArgumentError,
    ConfigurationError,
    CurvedFlagError,
    DataError,
    KernelDomainError,
    SampledField,
    SchemaError,
    configure,
    parallel_map,
    scaled,
    settings,
)


@pytest.fixture(autouse=True)
def _reset_settings():
    yield
    configure(threads=1, tolerance_scale=1.0, verbose=True)


@pytest.mark.parametrize(
    "cls, code",
    [
        (CurvedFlagError, 1),
        (ArgumentError, 2),
        (KernelDomainError, 2),
        (ConfigurationError, 2),
        (SchemaError, 2),
        (AccuracyError, 3),
        (AliasingError, 3),
        (DataError, 3),
    ],
)
def test_exit_codes(cls, code):
    assert cls.exit_code == code
    assert issubclass(cls, CurvedFlagError)


def test_argument_errors_are_value_errors():
    assert issubclass(ArgumentError, ValueError)
    assert issubclass(KernelDomainError, ValueError)
    assert issubclass(AliasingError, AccuracyError)


def test_error_payloads():
    e = AccuracyError("oracle budget exhausted", achieved_error=2.5e-7)
    assert e.achieved_error == 2.5e-7
    assert "2.500e-07" in str(e)

    d = DataError("non-finite ratio", key=(2.0, "gaussian-3", 1))
    assert d.key == (2.0, "gaussian-3", 1)
    assert "gaussian-3" in str(d)

    s = SchemaError("invalid config", diagnostics=["suites: too short"])
    assert s.diagnostics == ["suites: too short"]


def test_configure_and_scaled():
    configure(threads=3, tolerance_scale=2.0)
    assert settings.threads == 3
    assert scaled(0.01) == pytest.approx(0.02)

    configure(threads=0)
    assert settings.threads >= 1

    with pytest.raises(ValueError):
        configure(tolerance_scale=0.0)


@pytest.mark.parametrize("threads", [1, 4])
def test_parallel_map_preserves_order(threads):
    configure(threads=threads, verbose=False)
    out = parallel_map(lambda v: v * v, range(50), desc="squares")
    assert out == [v * v for v in range(50)]


def test_sampled_field_validation():
    ax = np.linspace(0.0, 1.0, 4)
    ay = np.linspace(0.0, 1.0, 3)
    f = SampledField(ax, ay, np.ones((4, 3)))
    assert f.shape == (4, 3)
    assert f.values.dtype == complex
    assert f.sup_abs() == pytest.approx(1.0)

    with pytest.raises(ArgumentError):
        SampledField(ax, ay, np.ones((3, 4)))
    with pytest.raises(ArgumentError):
        SampledField(ax[::-1], ay, np.ones((4, 3)))
    with pytest.raises(ArgumentError):
        SampledField(ax, ay, np.ones((4, 3)), axis_tags=("uniform", "spiral"))
    with pytest.raises(ArgumentError):
        SampledField(ax, ay, np.ones((4, 3)), quad_weight="gauss")


def test_with_values_keeps_axes_and_drops_evaluator():
    ax = np.arange(3.0)
    f = SampledField(ax, ax, np.zeros((3, 3)), names=("a", "delta"), evaluator=lambda a, d: 0.0, meta={"part": "m"})
    g = f.with_values(2j * np.ones((3, 3)), source="test")
    assert np.array_equal(g.axis_x, f.axis_x)
    assert g.names == ("a", "delta")
    assert g.evaluator is None
    assert g.meta == {"part": "m", "source": "test"}
    assert g.sup_abs() == pytest.approx(2.0)
