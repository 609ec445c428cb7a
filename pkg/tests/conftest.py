import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.VERDICTS):
        terminalreporter.write_line(module.VERDICTS[n])
