"""Pure algebraic kernels: polynomials, free modules, trees and forests."""
