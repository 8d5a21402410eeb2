import pytest

from dagautomata.fixtures import load_automaton, load_dag


@pytest.fixture(scope="session")
def ex1():
    return load_automaton("example1")


@pytest.fixture(scope="session")
def ex3():
    return load_automaton("example3")


@pytest.fixture(scope="session")
def ex6():
    return load_automaton("example6")


@pytest.fixture(scope="session")
def fig1v():
    return load_dag("fig1v")


@pytest.fixture(scope="session")
def fig1vii():
    return load_dag("fig1vii")


@pytest.fixture(scope="session")
def ex4_dag():
    return load_dag("example4")


def pytest_terminal_summary(terminalreporter):
    lines = [
        value
        for report in terminalreporter.stats.get("passed", []) + terminalreporter.stats.get("failed", [])
        if report.when == "call"
        for name, value in report.user_properties
        if name == "acceptance"
    ]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[0][1:])):
            terminalreporter.write_line(line)
