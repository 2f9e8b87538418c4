import nox


@nox.session
def tests(session):
    session.install(".[test]")
    session.run("pytest", *session.posargs)


@nox.session
def cov(session):
    session.install(".[test]")
    session.run("pytest", "--cov=brace_solutions", "--cov-report=html")
