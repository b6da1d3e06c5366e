import json
import logging
from typing import Any, TextIO, Union

from qtoric.fan.fan import Fan
from qtoric.predefined import KEY_DIM, KEY_MAX_CONES, KEY_RAYS
from qtoric.util import QtoricError, one_based

logger = logging.getLogger(__name__)


class FanFormatError(QtoricError):
    pass


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def fan_from_dict(data: Any) -> Fan:
    """
    Build a fan from the file object {"dim": n, "rays": [[...]], "max_cones": [[...]]} with 1-based cones.
    Only the shape is checked here; geometry is left to validate.
    :raises FanFormatError: on a malformed object.
    """
    if not isinstance(data, dict):
        raise FanFormatError('A fan file must hold a JSON object.')
    for key in (KEY_DIM, KEY_RAYS, KEY_MAX_CONES):
        if key not in data:
            raise FanFormatError(f'Missing key \'{key}\'.', {'key': key})

    dim = data[KEY_DIM]
    rays = data[KEY_RAYS]
    cones = data[KEY_MAX_CONES]

    if not _is_int(dim) or dim < 1:
        raise FanFormatError(f'\'{KEY_DIM}\' must be a positive integer.', {'value': dim})
    if not isinstance(rays, list) or not all(isinstance(r, list) and all(_is_int(x) for x in r) for r in rays):
        raise FanFormatError(f'\'{KEY_RAYS}\' must be a list of integer lists.')
    for i, ray in enumerate(rays):
        if len(ray) != dim:
            raise FanFormatError(f'Ray {i + 1} has {len(ray)} entries, expected {dim}.', {'ray': i + 1})
    if not isinstance(cones, list) or not all(isinstance(c, list) and all(_is_int(x) for x in c) for c in cones):
        raise FanFormatError(f'\'{KEY_MAX_CONES}\' must be a list of integer lists.')
    for i, cone in enumerate(cones):
        if any(not 1 <= x <= len(rays) for x in cone):
            raise FanFormatError(f'Cone {i + 1} refers to a ray outside 1..{len(rays)}.', {'cone': i + 1})

    return Fan(dim, rays, [[x - 1 for x in cone] for cone in cones])


def fan_to_dict(fan: Fan) -> dict:
    return {
        KEY_DIM: fan.dim,
        KEY_RAYS: [list(ray) for ray in fan.rays],
        KEY_MAX_CONES: [list(one_based(cone)) for cone in fan.max_cones],
    }


def loads_fan(text: str) -> Fan:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanFormatError(f'Invalid JSON: {e.msg} (line {e.lineno}, column {e.colno}).',
                             {'line': e.lineno, 'column': e.colno})
    return fan_from_dict(data)


def dumps_fan(fan: Fan) -> str:
    return json.dumps(fan_to_dict(fan))


def load_fan(source: Union[str, TextIO]) -> Fan:
    """
    Read a fan file.
    :param source: A path or an open text stream.
    """
    if isinstance(source, str):
        try:
            with open(source, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise FanFormatError(f'Fan file not accessible: {source}', {'path': source, 'reason': str(e)})
    else:
        text = source.read()

    fan = loads_fan(text)
    logger.debug('loaded fan with %d rays and %d maximal cones', fan.m, len(fan.max_cones))
    return fan


def dump_fan(fan: Fan, target: Union[str, TextIO]):
    text = dumps_fan(fan) + '\n'
    if isinstance(target, str):
        with open(target, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        target.write(text)
