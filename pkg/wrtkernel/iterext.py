import itertools
from argparse import Namespace
from typing import Any, Dict, Iterator, List


def dict_to_namespace(d: Dict[str, Any]):
    return Namespace(**d)


def product(**kwargs) -> Iterator[Namespace]:
    keys: List[str] = list(kwargs.keys())
    values = kwargs.values()
    i = 1
    for item in itertools.product(*values):
        args = dict_to_namespace(dict(zip(keys, item)))
        args.id = i
        yield args
        i += 1


def instance_key(args: Namespace, *fields: str) -> str:
    """Stable text key of a grid row, e.g. ``r=5,k=2``."""
    names = fields or tuple(k for k in vars(args) if k != 'id')
    return ",".join(f"{name}={getattr(args, name)}" for name in names)
