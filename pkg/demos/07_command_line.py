"""Driving everything from the command line (equivalently `fracradon ...` or `python -m fracradon ...`)."""

from fracradon.cli import run

run(["transform", "--fn", "gaussian:a=1", "--op", "radon", "--theta", "0", "--grid=-1:1:5"])
run(["fracint", "--fn", "gaussian:a=1", "--op", "T", "--alpha", "-0.5", "--method", "hypersingular",
     "--xprime", "0.3", "--grid=-1:1:5"])
run(["norms", "--fn", "gaussian:a=1", "--op", "radon", "--p", "1.2", "--out", "json"])
run(["report", "--table", "exponents"])
code = run(["verify", "--suite", "sharpness"])
print("verify exit code:", code)
