from importlib import resources

from qpcohom.document import parse_file


def fixture(name):
    return parse_file(str(resources.files("qpcohom") / "data" / name))
