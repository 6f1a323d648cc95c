"""Spectrum container invariants and CSV round-tripping."""

import numpy as np
import pytest

from elastica.errors import SpectrumIOError
from elastica.params import BoundaryCondition as BC
from elastica.params import LameParams, UNIT_DISK, UNIT_SQUARE
from elastica.spectrum import Method, Spectrum, merge_close, read_spectrum, write_spectrum


def _sample():
    return Spectrum(
        domain=UNIT_DISK,
        bc=BC.DIRICHLET,
        params=LameParams(1.0, 1.0),
        eigenvalues=np.array([11.322144642799871, 14.68197064212513, 27.3]),
        multiplicities=np.array([2, 1, 2]),
        mode_tags=["k1_coupled", "k0_shear_k0", "k2_coupled"],
        lambda_max=200.0,
        method=Method.POTENTIAL,
        meta={"k_max": "60"},
    )


def test_round_trip_byte_identical(tmp_path):
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    write_spectrum(_sample(), p1)
    s = read_spectrum(p1)
    write_spectrum(s, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert s.meta == {"k_max": "60"}
    assert s.total_count == 5


def test_count_below_strict():
    s = Spectrum(
        domain=UNIT_SQUARE,
        bc=BC.FREE,
        params=LameParams(1.0, 0.0),
        eigenvalues=np.array([0.0, 1.0, 2.0]),
        multiplicities=np.array([3, 2, 1]),
        mode_tags=["rigid", "a", "b"],
        lambda_max=10.0,
        method=Method.FEM,
    )
    # eigenvalues {1,1,2}: strict inequality at 2 counts only the 1s (plus zeros)
    assert s.count_below(2.0) == 5
    assert s.count_below(1.0) == 3
    assert s.count_below(2.0000001) == 6


def test_invariants_enforced():
    with pytest.raises(ValueError):
        Spectrum(UNIT_DISK, BC.DIRICHLET, LameParams(1, 1), np.array([2.0, 1.0]),
                 np.array([1, 1]), ["a", "b"], 10.0, Method.FEM)
    with pytest.raises(ValueError):
        Spectrum(UNIT_DISK, BC.DIRICHLET, LameParams(1, 1), np.array([0.0]),
                 np.array([1]), ["a"], 10.0, Method.FEM)
    with pytest.raises(ValueError):
        Spectrum(UNIT_DISK, BC.FREE, LameParams(1, 1), np.array([1.0]),
                 np.array([0]), ["a"], 10.0, Method.FEM)


def test_malformed_files(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("index,eigenvalue,multiplicity,mode_tag\n0,1.0,1,x\n")
    with pytest.raises(SpectrumIOError):
        read_spectrum(p)  # missing preamble
    p.write_text("# domain=unit_disk\nnot a header\n")
    with pytest.raises(SpectrumIOError):
        read_spectrum(p)


def test_merge_close():
    vals = np.array([1.0, 1.0 + 1e-8, 2.0, 2.0 + 1e-3])
    reps, mults = merge_close(vals, rel_gap=1e-6)
    assert list(mults) == [2, 1, 1]
    assert abs(reps[0] - (2.0 + 1e-8) / 2) < 1e-15
