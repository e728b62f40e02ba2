#ifndef PPOLY_FORMS_HPP
#define PPOLY_FORMS_HPP

// Level-1 modular forms: Eisenstein q-expansions, the Miller-style echelon
// basis of cusp forms, Hecke matrices, numeric eigenform extraction, and
// certified q-series evaluation in the upper half-plane.

#include "ppoly/real.hpp"
#include <string>
#include <vector>

namespace ppoly {

enum class FormKind { eisenstein, cusp_eigenform };

struct FormSpec {
    unsigned k = 0;            // even weight
    FormKind kind = FormKind::eisenstein;
    unsigned index = 0;        // eigenform index, ordered by a_2 descending
    unsigned P = 0;            // working precision in bits
    unsigned long N = 0;       // truncation length
};

struct FourierCoefficients {
    FormSpec spec;
    std::vector<Real> a;       // a[0..N]
};

std::string form_id(const FormSpec& spec);

// dim S_k for level 1 (0 for k < 12 or odd k)
unsigned cusp_dim(unsigned k);

// truncation sufficient for tails decaying like e^(-2 pi y_min n)
unsigned long default_truncation(unsigned k, unsigned P, double y_min);

Int sigma_power(unsigned long n, unsigned r);

// a_0 = 1, a_n = (2 pi)^k/(zeta(k) Gamma(k)) sigma_{k-1}(n)
FourierCoefficients eisenstein_series(unsigned k, unsigned long N, unsigned P);

// echelonized integer basis f_1..f_d of S_k, f_j = q^j + O(q^(d+1))
using IntSeries = std::vector<Int>;
std::vector<IntSeries> miller_basis(unsigned k, unsigned long N);

// matrix of T_p in the miller basis: M[i][j] = coefficient of f_i in T_p f_j
using RatMatrix = std::vector<std::vector<Rat>>;
RatMatrix hecke_matrix(unsigned k, unsigned long p, const std::vector<IntSeries>& basis);

// all normalized eigenforms of S_k, ordered by a_2 descending
std::vector<FourierCoefficients> eigenforms(unsigned k, unsigned P, unsigned long N);

// sum a_n e^(2 pi i n tau) with certified truncation tail
Complex evaluate_form(const FourierCoefficients& f, const Complex& tau, unsigned P);

} // namespace ppoly

#endif
