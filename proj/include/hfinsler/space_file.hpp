#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hfinsler/decomposition.hpp"
#include "hfinsler/lie_algebra.hpp"
#include "hfinsler/minkowski.hpp"

namespace hfinsler {

struct BracketRecord {
    std::string x;
    std::string y;
    std::map<std::string, double> out;
};

struct NormSpec {
    std::string family;
    Eigen::MatrixXd matrix;               ///< riemannian, randers
    Eigen::VectorXd covector;             ///< randers
    QuarticCoefficients coefficients;     ///< quartic, indices over m
};

/// In-memory form of a space definition file:
///
///   { "name": ..., "dim": n, "basis": [names],
///     "brackets": [ {"x": a, "y": b, "out": {name: coeff}} ],
///     "h": [names], "m": [names],
///     "norm": {"family": "riemannian", "matrix": [[...]]}
///           | {"family": "randers", "matrix": [[...]], "covector": [...]}
///           | {"family": "quartic", "coefficients": {"i,j,k,l": c}} }
struct SpaceDefinition {
    std::string name;
    int dim = 0;
    std::vector<std::string> basis;
    std::vector<BracketRecord> brackets;
    std::vector<std::string> h;
    std::vector<std::string> m;
    NormSpec norm;
};

/// Fully validated model assembled from a definition.
struct Space {
    std::string name;
    std::shared_ptr<const LieAlgebra> algebra;
    std::shared_ptr<const ReductiveDecomposition> decomposition;
    std::shared_ptr<const MinkowskiNorm> norm;
};

/// Throws InvalidInput on malformed JSON or a schema mismatch.
SpaceDefinition parse_space(const nlohmann::json& j);
SpaceDefinition read_space_file(const std::string& path);

nlohmann::json to_json(const SpaceDefinition& def);

/// Validates everything (names, partition, Jacobi identity, decomposition
/// closure, norm admissibility) and throws ValidationError listing every
/// violation found.
Space assemble(const SpaceDefinition& def, double tol = kDefaultLieTol);
Space load_space(const std::string& path, double tol = kDefaultLieTol);

/// Canonical definition of an assembled model (brackets ordered by basis
/// index with i < j, zero coefficients dropped).
SpaceDefinition describe(const Space& space);

/// Structure constants, splitting and norm data are bitwise identical.
bool bitwise_equal(const Space& a, const Space& b);

} // namespace hfinsler
