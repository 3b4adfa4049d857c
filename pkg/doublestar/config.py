import os
from dataclasses import dataclass, fields, replace


class CapExceededException(Exception):
    pass


class ParseException(Exception):
    pass


@dataclass(frozen=True)
class Caps(object):
    """
    Desk-scale limits for the searches and materializations in the package.

    Parameters
    ----------
    group: int
        maximal number of elements a group closure may produce

    stars: int
        maximal number of stars enumerated per base vertex

    orbits: int
        maximal number of double-star orbits returned by a search

    iso: int
        maximal vertex count handed to a single isomorphism test

    vertices: int
        maximal vertex count of a catalog graph

    Examples
    --------

    >>> caps = Caps.from_mapping({'group': 5000})
    >>> caps.group
    5000

    """
    group: int = 10 ** 6
    stars: int = 10 ** 5
    orbits: int = 10 ** 3
    iso: int = 256
    vertices: int = 10 ** 5

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ParseException('Cap %r must be a positive integer, got %r.' % (f.name, value))

    @classmethod
    def from_mapping(cls, mapping):
        if mapping is None:
            return cls()
        known = {f.name for f in fields(cls)}
        unknown = set(mapping) - known
        if unknown:
            raise ParseException('Unknown caps: %s' % ', '.join(sorted(unknown)))
        return cls(**mapping)

    def override(self, **values):
        """
        Returns a copy with all non-None values replaced.
        """
        values = {key: value for key, value in values.items() if value is not None}
        return replace(self, **values)


class Settings(object):
    """
    Process-wide switches read once from the environment.
    """

    def __init__(self):
        self.check_orbit_stabilizer = os.environ.get('DOUBLESTAR_CHECK_ORBITS', '') == '1'


DEFAULT_CAPS = Caps()

settings = Settings()
