import numpy as np
import pytest
from skimage import data

from fjpeg.image_io import Image


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def _photos():
    coffee = data.coffee()[:, 44:556]
    return {
        "astronaut": Image.from_array(data.astronaut()),
        "camera": Image.from_array(data.camera()),
        "chelsea": Image.from_array(data.chelsea()),
        "coffee": Image.from_array(coffee),
    }


@pytest.fixture(scope="session")
def photos():
    """Photographic test images, 300-512 px, gray and RGB."""
    return _photos()


def random_image(rng, width, height, channels):
    return Image(rng.integers(0, 256, size=(channels, height, width), dtype=np.uint8))


def random_quantized_blocks(rng, n):
    """Sparse quantized blocks resembling real coefficient fields.

    A few coefficients are large enough to need the escape codes.
    """
    blocks = np.zeros((n, 8, 8), dtype=np.int64)
    blocks[:, 0, 0] = rng.integers(-2047, 2048, n)
    density = rng.uniform(0, 0.6, n)[:, None, None]
    mask = rng.random((n, 8, 8)) < density
    mags = rng.geometric(0.3, (n, 8, 8))
    signs = rng.choice([-1, 1], (n, 8, 8))
    ac = np.where(mask, mags * signs, 0)
    ac[:, 0, 0] = 0
    big = rng.random((n, 8, 8)) < 0.01
    ac = np.where(big, rng.integers(-32767, 32768, (n, 8, 8)), ac)
    ac[:, 0, 0] = 0
    return blocks + ac


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary is printed after the run."""

    def record(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append((number, f"[{status}] AC{number:02d} {title}: {detail}"))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
