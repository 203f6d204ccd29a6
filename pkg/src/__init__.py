# Hochschild (co)homology toolkit for quantum generalized Weyl algebras.
