"""Communication matrices of composed functions and their measures."""
from .bounds import binary_entropy, klauck_bound, power_log3_2_at_most
from .coloring import chromatic_number, dsatur_greedy, greedy_clique
from .lifting import cross_complete, gadget_property_check, lift_audit
from .matrix import (CommMatrix, ceil_log2, comm_matrix, conflict_graph, distinct_rows,
                     one_way_cc, one_way_cc_partial)
from .rank import bareiss_rank, integer_rank, matrix_rank
from .vc import (ShatterWitness, VCResult, ip_shattering_witness, shattering_check,
                 vc_dim_bruteforce, witness_rows_check)
