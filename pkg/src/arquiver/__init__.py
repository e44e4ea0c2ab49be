"""arquiver: exact Auslander-Reiten computations for bound quiver algebras.

Layers, bottom up:

- exactlin: dense linear algebra over GF(p)
- quivalg:  quivers, relations, bound quiver algebras, opposite, triangular 2x2
- repmod:   representations, morphisms, hom spaces, (co)kernels, decomposition
- homalg:   presentations, syzygies, transpose, AR translation, stable hom, Ext
- morphcat: the morphism category and its minimal-monomorphism constructions
- arsubcat: Gorenstein data, relative AR translations, duality verification
- cli:      arquiver command line (compute / verify / t2)
"""

__version__ = "0.1.0"

from .exactlin import Matrix, PrimeField, backend

__all__ = ["Matrix", "PrimeField", "backend", "__version__"]
