import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsnom.dipole import (
    HBAR_C_EV_NM,
    UNITS,
    DielectricSample,
    TipDipole,
    derive_image,
    image_alpha,
    near_field_check,
)
from qsnom.errors import UnsupportedPermittivityError


class TestSampleResponse:
    def test_vacuum_has_no_image(self):
        assert image_alpha(DielectricSample(1.0)) == 0.0

    def test_reference_values(self):
        assert image_alpha(DielectricSample(3.0)) == pytest.approx(0.5, abs=1e-15)
        assert image_alpha(DielectricSample(11.7)) == pytest.approx(
            10.7 / 12.7, abs=1e-15
        )

    def test_large_permittivity_saturates(self):
        assert image_alpha(DielectricSample(1e8)) == pytest.approx(1.0, abs=1e-7)
        assert image_alpha(DielectricSample(1e8)) < 1.0

    def test_rejects_sub_unit_permittivity(self):
        for eps in (0.99, 0.0, -2.0):
            with pytest.raises(UnsupportedPermittivityError):
                DielectricSample(eps)

    @settings(max_examples=50, deadline=None)
    @given(
        st.floats(min_value=1.0, max_value=1e6),
        st.floats(min_value=1e-9, max_value=1e6),
    )
    def test_monotone_in_permittivity(self, eps, step):
        lo = DielectricSample(eps).alpha
        hi = DielectricSample(eps + step).alpha
        assert 0.0 <= lo < 1.0
        assert hi >= lo


class TestImageDerivation:
    def test_energy_scaling(self):
        tip = TipDipole(omega=2.0, height_nm=1.0, ground_energy=0.5)
        image = derive_image(tip, DielectricSample(3.0))
        assert image.omega_image == pytest.approx(0.25 * 2.0, abs=1e-15)
        assert image.energies[0] == pytest.approx(0.25 * 0.5, abs=1e-15)
        assert image.energies[1] == pytest.approx(0.25 * 2.5, abs=1e-15)
        assert image.moment_scale_image == pytest.approx(0.5, abs=1e-15)

    def test_vacuum_image_is_dark(self):
        tip = TipDipole(omega=1.0, height_nm=1.0)
        image = derive_image(tip, DielectricSample(1.0))
        assert image.omega_image == 0.0
        assert image.moment_scale_image == 0.0

    def test_gap_consistency(self):
        tip = TipDipole(omega=1.3, height_nm=0.7, ground_energy=0.2)
        image = derive_image(tip, DielectricSample(5.0))
        assert image.energies[1] - image.energies[0] == pytest.approx(
            image.omega_image, abs=1e-15
        )

    def test_tip_validation(self):
        with pytest.raises(ValueError, match="omega"):
            TipDipole(omega=0.0, height_nm=1.0)
        with pytest.raises(ValueError, match="height_nm"):
            TipDipole(omega=1.0, height_nm=-1.0)
        with pytest.raises(ValueError, match="moment_scale"):
            TipDipole(omega=1.0, height_nm=1.0, moment_scale=0.0)


class TestUnits:
    def test_energy_frequency_round_trip(self):
        for e in (0.1, 1.0, 3.5):
            assert UNITS.energy_from_frequency(
                UNITS.frequency_from_energy(e)
            ) == pytest.approx(e, rel=1e-15)

    def test_reduced_wavelength(self):
        assert UNITS.reduced_wavelength_nm(1.0) == pytest.approx(HBAR_C_EV_NM)
        assert UNITS.reduced_wavelength_nm(2.0) == pytest.approx(HBAR_C_EV_NM / 2)
        with pytest.raises(ValueError):
            UNITS.reduced_wavelength_nm(0.0)


class TestNearFieldCheck:
    def test_nanoscale_gap_passes(self):
        tip = TipDipole(omega=1.0, height_nm=1.0)
        report = near_field_check(tip, derive_image(tip, DielectricSample(1.0)))
        assert report.passed
        assert report.ratio == pytest.approx(2.0 / HBAR_C_EV_NM, rel=1e-12)

    def test_wavelength_scale_gap_fails(self):
        tip = TipDipole(omega=1.0, height_nm=50.0)
        report = near_field_check(tip, derive_image(tip, DielectricSample(3.0)))
        assert not report.passed
        assert report.ratio == pytest.approx(100.0 / HBAR_C_EV_NM, rel=1e-12)

    def test_image_gap_never_tightens_the_bound(self):
        # the image gap is smaller, so its wavelength is longer
        tip = TipDipole(omega=1.0, height_nm=1.0)
        vacuum = near_field_check(tip, derive_image(tip, DielectricSample(1.0)))
        dielectric = near_field_check(tip, derive_image(tip, DielectricSample(11.7)))
        assert dielectric.ratio == pytest.approx(vacuum.ratio, rel=1e-12)

    def test_factor_validation(self):
        tip = TipDipole(omega=1.0, height_nm=1.0)
        image = derive_image(tip, DielectricSample(1.0))
        with pytest.raises(ValueError):
            near_field_check(tip, image, factor=0.0)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_ratio_scales_with_height(self, height):
        tip = TipDipole(omega=1.0, height_nm=height)
        image = derive_image(tip, DielectricSample(3.0))
        report = near_field_check(tip, image)
        assert report.ratio == pytest.approx(
            2.0 * height / HBAR_C_EV_NM, rel=1e-12
        )
        assert report.passed == (report.ratio < 0.1)
