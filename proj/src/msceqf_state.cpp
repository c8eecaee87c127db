// clone bookkeeping lives in msceqf_matrices.cpp
