from hypothesis import settings

# same examples on every run, so a red test stays red
settings.register_profile("repeatable", derandomize=True)
settings.load_profile("repeatable")

_ACCEPTANCE: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
