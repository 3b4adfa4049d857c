from doublestar.config import settings

# Every orbit computed by the suite asserts |orbit| * |stabilizer| = |X|.
settings.check_orbit_stabilizer = True
