import numpy as np
import pytest

from mashgrip.errors import ValidationError
from mashgrip.harness.characterize import KINDS, characterize, rise_time


@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_emits_csv(kind):
    text = characterize(kind).to_csv()
    lines = text.split("\n")
    assert lines[-1] == "" and "\r" not in text
    header = lines[0].split(",")
    assert all(len(line.split(",")) == len(header) for line in lines[1:-1])


def test_unknown_kind():
    with pytest.raises(ValidationError):
        characterize("colour")


def test_brake_force_sweep():
    t = characterize("brake_force")
    assert t.column("force_N")[0] == 0.0
    assert t.column("force_N")[-1] == pytest.approx(1.962, rel=5e-3)
    assert np.all(np.diff(t.column("force_N")) > 0)


def test_brake_response_seeded():
    a = characterize("brake_response", {"seed": 3}).to_csv()
    assert a == characterize("brake_response", {"seed": 3}).to_csv()
    assert a != characterize("brake_response", {"seed": 4}).to_csv()


def test_brake_response_filter_bounded():
    t = characterize("brake_response")
    assert np.all(np.abs(np.diff(t.column("filtered_force_N"))) <= 0.05 + 1e-12)


def test_release_decays():
    t = characterize("brake_response", {"t_off": 0.3})
    e = t.column("engagement")
    assert e[-1] < 0.1


def test_rise_time_helper():
    t = np.linspace(0, 1, 1001)
    assert rise_time(t, t) == pytest.approx(0.8)
    with pytest.raises(ValueError):
        rise_time(t, 0.5 * t)


def test_extension_sweep_rows():
    t = characterize("extension")
    assert list(t.column("pressure_kPa")) == [10.0 * k for k in range(1, 11)]


def test_aperture_sweep_grows():
    t = characterize("aperture")
    assert np.all(np.diff(t.column("aperture_mm")) > 0)
    np.testing.assert_allclose(np.degrees(t.column("angle_rad")), t.column("angle_deg"))


def test_stiffness_grid_shape():
    t = characterize("stiffness")
    assert len(t.rows) == 7 * 5
    assert set(t.column("slipped")[t.column("voltage_V") == 0]) == {0.0}


def test_write(tmp_path):
    path = tmp_path / "x.csv"
    characterize("extension").write(path)
    assert path.read_bytes().startswith(b"pressure_kPa,length_mm\n")
