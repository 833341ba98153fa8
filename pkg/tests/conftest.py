"""Shared pytest plumbing: collects acceptance lines for the terminal summary."""

_acceptance_lines = []


def record_acceptance_line(line: str) -> None:
    if line not in _acceptance_lines:
        _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
