import pytest

from fans import CORPUS, SURFACES
from qtoric.fan.fan import Fan
from qtoric.fan.io import dump_fan


@pytest.fixture(params=sorted(CORPUS))
def corpus_fan(request) -> Fan:
    return CORPUS[request.param]()


@pytest.fixture(params=sorted(SURFACES))
def surface(request) -> Fan:
    return SURFACES[request.param]()


@pytest.fixture
def fan_file(tmp_path):
    """
    Write a fan to a JSON file and return the path.
    """

    def write(fan: Fan, name: str = 'fan.json') -> str:
        path = tmp_path / name
        dump_fan(fan, str(path))
        return str(path)

    return write
