import hashlib
import sys
from pathlib import Path
from typing import Any

import jstyleson

from .errors import SchemaError

SCHEMA = "wrtkernel/1"


def get_hash(obj: Any) -> str:
    md5 = hashlib.md5(str(obj).encode())
    return md5.hexdigest()


def json_dumps(obj, **kwargs) -> str:
    indent = kwargs.pop('indent', 2)
    return jstyleson.dumps(obj, indent=indent, sort_keys=True, **kwargs)


def json_dump(obj, file_path=None, mode='w', **kwargs):
    """Write `obj` as JSON to `file_path`, or to stdout when no path is given."""
    text = json_dumps(obj, **kwargs)
    if file_path is None:
        sys.stdout.write(text + '\n')
        return None
    with open(file_path, mode=mode, encoding='utf-8') as f:
        f.write(text + '\n')
    return Path(file_path).absolute()


def json_load(file_path, encoding='utf-8'):
    try:
        with open(Path(file_path), 'r', encoding=encoding) as f:
            return jstyleson.load(f)
    except ValueError as err:
        raise SchemaError(f"{file_path}: not valid JSON ({err})") from err


def set_seed(seed: int = 42):
    """Set seed for `numpy` and built-in `random`."""
    import numpy as np
    np.random.seed(seed)
    import random
    random.seed(seed)
