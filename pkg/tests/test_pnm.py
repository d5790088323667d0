import numpy as np
import pytest

from simtrack import pnm


def test_pgm_round_trip(tmp_path, rng):
    img = rng.random((12, 17))
    path = tmp_path / "a.pgm"
    pnm.write_pnm(path, img)
    back = pnm.read_pnm(path)
    assert back.shape == (12, 17)
    assert np.abs(back - img).max() <= 0.5 / 255.0 + 1e-12


def test_ppm_round_trip(tmp_path, rng):
    img = rng.random((9, 5, 3))
    path = tmp_path / "a.ppm"
    pnm.write_pnm(path, img)
    back = pnm.read_pnm(path)
    assert back.shape == (9, 5, 3)
    assert np.abs(back - img).max() <= 0.5 / 255.0 + 1e-12


def test_header_comments_are_skipped(tmp_path):
    raw = b"P5\n# a comment\n3 2\n# another\n255\n" + bytes(range(6))
    path = tmp_path / "c.pgm"
    path.write_bytes(raw)
    img = pnm.read_pnm(path)
    np.testing.assert_allclose(img * 255.0, np.arange(6).reshape(2, 3), atol=1e-9)


def test_rejects_ascii_pnm(tmp_path):
    path = tmp_path / "a.pgm"
    path.write_bytes(b"P2\n2 2\n255\n0 1 2 3\n")
    with pytest.raises(ValueError):
        pnm.read_pnm(path)


def test_rejects_truncated_raster(tmp_path):
    path = tmp_path / "t.pgm"
    path.write_bytes(b"P5\n4 4\n255\n" + bytes(5))
    with pytest.raises(ValueError):
        pnm.read_pnm(path)
