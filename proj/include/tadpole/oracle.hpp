// oracle.hpp — Independent finite-difference/FEM discretization of H on the
// truncated graph: eigenpairs, evolution, energy identity, Weyl residuals.
// Deliberately self-contained: depends only on core (adjudication arbiter).
#pragma once

#include "tadpole/core.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace tadpole {

enum class Closure { dirichlet, absorbing_layer };

// Lumped-mass P1 discretization. Unknowns: [vertex, R1 interior (Dirichlet at
// x_max), R2 interior]; A = M^{-1} K has the (-1,2,-1)/h^2 interior stencil,
// the vertex row carries the flux (Kirchhoff) balance and the i*alpha term.
struct DiscreteOperator {
    GraphParams params;
    Closure closure = Closure::dirichlet;
    int dim = 0;
    int vertex_index = 0;
    Eigen::SparseMatrix<Complex> K; // stiffness (+ i*alpha vertex term, + layer)
    Eigen::VectorXd M;              // lumped mass diagonal

    Eigen::VectorXcd pack(const GraphFunction& f) const;
    GraphFunction unpack(const Eigen::VectorXcd& v) const;

    Complex m_dot(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) const;
    double m_norm(const Eigen::VectorXcd& a) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const; // M^{-1} K v
};

DiscreteOperator build_discrete_operator(const GraphParams& p,
                                         Closure closure = Closure::dirichlet,
                                         double layer_strength = 2.0);

struct OracleEigenpair {
    Complex mu;          // discrete eigenvalue (approximates lambda^2)
    GraphFunction mode;  // M-normalized eigenvector
    double residual;     // ||A v - mu v||_M / ||v||_M
    double r1_mass;      // fraction of the mode's mass on R1 (confinement)
};

// Shift-invert subspace iteration with Ritz extraction; returns up to `count`
// eigenpairs nearest `shift` with residual < 1e-8, sorted by |mu - shift|.
std::vector<OracleEigenpair> oracle_eigenpairs(const DiscreteOperator& op,
                                               Complex shift, int count);

struct EvolveResult {
    std::vector<GraphFunction> states;   // every `store_stride` steps (+ final)
    std::vector<double> norms;           // M-norm each step, incl. t = 0
    std::vector<Complex> vertex_trace;   // u(vertex) each step, incl. t = 0
    double dt = 0.0;
};

// Crank-Nicolson for u' = iHu: (M - i dt/2 K) u^{n+1} = (M + i dt/2 K) u^n.
EvolveResult oracle_evolve(const DiscreteOperator& op, const GraphFunction& u0,
                           double dt, int steps, int store_stride = 0);

// max_t |  ||u(t)||^2 - ||u(0)||^2 + 2 alpha int_0^t |u(vertex)|^2 | / ||u(0)||^2
double energy_identity_check(const EvolveResult& trace, double alpha);

struct WeylPacket {
    double lambda_abs;
    int n;
    GraphFunction values;
    double norm; // M-norm (>= 1 - O(h) by construction)
};

WeylPacket build_weyl_packet(const DiscreteOperator& op, double lambda_abs, int n);

// ||(A - lambda^2 I) theta||_M / ||theta||_M for the dilation-n packet.
double weyl_residual(const DiscreteOperator& op, double lambda_abs, int n);

// Discrete Green's column: solve (K - z^2 M) u = e_node (discrete delta 1/h).
GraphFunction oracle_green_column(const DiscreteOperator& op, Complex z,
                                  bool on_r2, double y);

struct RootAdjudication {
    Complex root;      // lambda
    Complex oracle_mu; // nearest discrete eigenvalue to lambda^2
    double distance;   // |oracle_mu - lambda^2|
    Closure closure;
    double h1, h2;
    std::string verdict; // confirmed | refuted | unresolved
};

RootAdjudication adjudicate_root(Complex lambda, const GraphParams& p, Closure closure);

} // namespace tadpole
