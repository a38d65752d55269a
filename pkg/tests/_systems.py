"""Worked systems shared by the test modules."""

EX0 = "u00 + u01*y1^2 ; u10*y1@1 + u11*y1"
EX1 = ("u00*y1@2 + u01*y1@3 + u02*y2@3 ; u10*y1@2 + u11*y1@3 + u12*y2@3 ; "
       "u20*y1@2 + u21*y1@3 + u22*y2@3")
EX2 = "u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2"
# the third polynomial gets its own coefficients u20, u21
EX2N = "u00 + u01*y1*y1@1 ; u10 + u11*y1 ; u20 + u21*y2@1"
LINEAR = ("u00 + u01*y1 + u02*y2 ; u10 + u11*y1@1 + u12*y2@1 ; "
          "u20 + u21*y1@1 + u22*y2@1")
PIPELINE = ("u00 + u01*y1@1^2*y2@1^2*y3 + u02*y1^2*y2*y3 ; "
            "u10 + u11*y1@2^4*y2@2^4*y3@1^2 + u12*y1@1^2*y2@1*y3@1 ; "
            "u20 + u21*y1@1^2*y2@1^2*y3 + u22*y1^2*y2*y3 ; "
            "u30 + u31*y1@1*y3")
ROOT_SYSTEM = "u00 + u01*y1*y2 ; u10 + u11*y1*y2@1 ; u20 + u21*y2"
LINEAR_PAIR = "u00 + u01*y1 ; u10 + u11*y1@1"
# y2 is declared but never used, so the support matrix has rank 1 < 2
NOT_ESSENTIAL = ('{"main": ["y1", "y2"], '
                 '"system": "u00 + u01*y1 ; u10 + u11*y1@1 ; u20 + u21*y1@2"}')

ALL = {"ex-0": EX0, "ex-1": EX1, "ex-2": EX2, "ex-2n": EX2N, "linear": LINEAR,
       "pipeline": PIPELINE, "linear-pair": LINEAR_PAIR, "root-system": ROOT_SYSTEM}

EX0_SR = "u10^2*u01*u00@1 - u11^2*u00*u01@1"
EX2_SR = "u00@1*u11 - u01@1*u10"
EX2N_SR = "u00*u11*u11@1 + u01*u10*u10@1"
# factors of the pipeline example's reference R = u10*A^2 + u11*B^2 + u12*C*A
PIPELINE_A = "u02@1*u21@1 - u01@1*u22@1"
PIPELINE_B = "u00@1*u22@1 - u02@1*u20@1"
PIPELINE_C = "u00@1*u21@1 - u01@1*u20@1"
