"""Bundled spec files for the worked examples and a few broken inputs."""

from importlib import resources

EXAMPLE_FIXTURES = ("intro", "intro_equal", "running", "running_equal",
                  "dvr1", "dvr2", "dvr3", "dvr4", "dvr5", "mathieu")
BROKEN_FIXTURES = ("broken_nonbiserial", "broken_nonspecial", "broken_arrow_relation")


def fixture_text(name: str) -> str:
    return resources.files(__name__).joinpath(f"{name}.qz").read_text()


def fixture_path(name: str) -> str:
    return str(resources.files(__name__).joinpath(f"{name}.qz"))
