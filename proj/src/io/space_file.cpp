#include "hfinsler/space_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hfinsler/errors.hpp"

namespace hfinsler {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::string> string_list(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) throw InvalidInput(std::string("field '") + key + "' must be an array of names");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw InvalidInput(std::string("field '") + key + "' must contain only strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw InvalidInput(where + " must be a number");
    return j.get<double>();
}

Eigen::MatrixXd matrix_field(const json& norm) {
    const json& rows = field(norm, "matrix");
    if (!rows.is_array()) throw InvalidInput("norm.matrix must be an array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw InvalidInput("norm.matrix must be square");
        }
        for (Eigen::Index k = 0; k < n; ++k) a(i, k) = number(row[static_cast<std::size_t>(k)], "norm.matrix entry");
    }
    return a;
}

std::array<int, 4> parse_quartic_key(const std::string& key) {
    std::array<int, 4> idx{};
    std::istringstream is(key);
    std::string part;
    int t = 0;
    while (std::getline(is, part, ',')) {
        if (t >= 4) throw InvalidInput("quartic key '" + key + "' must have four indices");
        try {
            std::size_t used = 0;
            idx[static_cast<std::size_t>(t)] = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw InvalidInput("quartic key '" + key + "' is not a list of integers");
        }
        ++t;
    }
    if (t != 4) throw InvalidInput("quartic key '" + key + "' must have four indices");
    return idx;
}

std::string quartic_key(const std::array<int, 4>& idx) {
    return std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," + std::to_string(idx[2]) + "," +
           std::to_string(idx[3]);
}

} // namespace

SpaceDefinition parse_space(const json& j) {
    if (!j.is_object()) throw InvalidInput("space definition must be a JSON object");
    SpaceDefinition def;
    const json& name = field(j, "name");
    if (!name.is_string()) throw InvalidInput("field 'name' must be a string");
    def.name = name.get<std::string>();
    const json& dim = field(j, "dim");
    if (!dim.is_number_integer()) throw InvalidInput("field 'dim' must be an integer");
    def.dim = dim.get<int>();
    def.basis = string_list(j, "basis");
    def.h = string_list(j, "h");
    def.m = string_list(j, "m");

    const json& brackets = field(j, "brackets");
    if (!brackets.is_array()) throw InvalidInput("field 'brackets' must be an array");
    for (const auto& b : brackets) {
        BracketRecord rec;
        const json& x = field(b, "x");
        const json& y = field(b, "y");
        if (!x.is_string() || !y.is_string()) throw InvalidInput("bracket x/y must be basis names");
        rec.x = x.get<std::string>();
        rec.y = y.get<std::string>();
        const json& out = field(b, "out");
        if (!out.is_object()) throw InvalidInput("bracket 'out' must map names to coefficients");
        for (const auto& [k, v] : out.items()) rec.out[k] = number(v, "bracket coefficient");
        def.brackets.push_back(std::move(rec));
    }

    const json& norm = field(j, "norm");
    const json& family = field(norm, "family");
    if (!family.is_string()) throw InvalidInput("norm.family must be a string");
    def.norm.family = family.get<std::string>();
    const auto fam = parse_norm_family(def.norm.family);
    if (!fam) throw InvalidInput("unknown norm family '" + def.norm.family + "'");
    if (*fam != NormFamily::quartic) def.norm.matrix = matrix_field(norm);
    if (*fam == NormFamily::randers) {
        const json& b = field(norm, "covector");
        if (!b.is_array()) throw InvalidInput("norm.covector must be an array");
        def.norm.covector.resize(static_cast<Eigen::Index>(b.size()));
        for (std::size_t i = 0; i < b.size(); ++i) {
            def.norm.covector(static_cast<Eigen::Index>(i)) = number(b[i], "norm.covector entry");
        }
    }
    if (*fam == NormFamily::quartic) {
        const json& c = field(norm, "coefficients");
        if (!c.is_object()) throw InvalidInput("norm.coefficients must map \"i,j,k,l\" to numbers");
        for (const auto& [k, v] : c.items()) {
            if (!def.norm.coefficients.emplace(parse_quartic_key(k), number(v, "quartic coefficient")).second) {
                throw InvalidInput("duplicate quartic key '" + k + "'");
            }
        }
    }
    return def;
}

SpaceDefinition read_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open space file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput("parse error in '" + path + "': " + e.what());
    }
    return parse_space(j);
}

json to_json(const SpaceDefinition& def) {
    json j;
    j["name"] = def.name;
    j["dim"] = def.dim;
    j["basis"] = def.basis;
    json brackets = json::array();
    for (const auto& b : def.brackets) {
        json out = json::object();
        for (const auto& [k, v] : b.out) out[k] = v;
        brackets.push_back({{"x", b.x}, {"y", b.y}, {"out", out}});
    }
    j["brackets"] = brackets;
    j["h"] = def.h;
    j["m"] = def.m;
    json norm;
    norm["family"] = def.norm.family;
    if (def.norm.family != "quartic") {
        json rows = json::array();
        for (Eigen::Index i = 0; i < def.norm.matrix.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < def.norm.matrix.cols(); ++k) row.push_back(def.norm.matrix(i, k));
            rows.push_back(row);
        }
        norm["matrix"] = rows;
    }
    if (def.norm.family == "randers") {
        json b = json::array();
        for (Eigen::Index i = 0; i < def.norm.covector.size(); ++i) b.push_back(def.norm.covector(i));
        norm["covector"] = b;
    }
    if (def.norm.family == "quartic") {
        json c = json::object();
        for (const auto& [idx, v] : def.norm.coefficients) c[quartic_key(idx)] = v;
        norm["coefficients"] = c;
    }
    j["norm"] = norm;
    return j;
}

Space assemble(const SpaceDefinition& def, double tol) {
    std::vector<std::string> violations;
    auto violate = [&](std::string s) { violations.push_back(std::move(s)); };

    if (def.dim <= 0) violate("dim must be positive");
    if (static_cast<int>(def.basis.size()) != def.dim) {
        violate("basis has " + std::to_string(def.basis.size()) + " names but dim is " + std::to_string(def.dim));
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < def.basis.size(); ++i) {
        if (def.basis[i].empty()) violate("basis name " + std::to_string(i) + " is empty");
        if (!index.emplace(def.basis[i], static_cast<int>(i)).second) violate("duplicate basis name '" + def.basis[i] + "'");
    }
    auto lookup = [&](const std::string& name, const std::string& where) -> int {
        const auto it = index.find(name);
        if (it == index.end()) {
            violate(where + ": unknown basis name '" + name + "'");
            return -1;
        }
        return it->second;
    };

    const int n = static_cast<int>(def.basis.size());
    LieAlgebra::Constants constants;
    for (const auto& b : def.brackets) {
        const std::string where = "bracket [" + b.x + ", " + b.y + "]";
        const int i = lookup(b.x, where);
        const int j = lookup(b.y, where);
        if (i < 0 || j < 0) continue;
        if (i == j) {
            violate(where + ": a basis vector bracketed with itself is zero and must not be listed");
            continue;
        }
        Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
        bool ok = true;
        for (const auto& [name, coeff] : b.out) {
            const int k = lookup(name, where);
            if (k < 0) {
                ok = false;
                continue;
            }
            if (!std::isfinite(coeff)) {
                violate(where + ": non-finite coefficient");
                ok = false;
            }
            c(k) = coeff;
        }
        if (!ok) continue;
        // store in canonical i < j order
        const auto key = i < j ? LieAlgebra::PairKey{i, j} : LieAlgebra::PairKey{j, i};
        if (!constants.emplace(key, i < j ? c : Eigen::VectorXd(-c)).second) violate(where + ": pair listed twice");
    }

    std::vector<int> h_idx, m_idx;
    for (const auto& name : def.h) {
        if (const int k = lookup(name, "h"); k >= 0) h_idx.push_back(k);
    }
    for (const auto& name : def.m) {
        if (const int k = lookup(name, "m"); k >= 0) m_idx.push_back(k);
    }
    {
        std::set<int> seen;
        for (int k : h_idx) seen.insert(k);
        for (int k : m_idx) {
            if (!seen.insert(k).second) violate("basis name '" + def.basis[static_cast<std::size_t>(k)] + "' is in both h and m");
        }
        if (static_cast<int>(seen.size()) != n || h_idx.size() + m_idx.size() != static_cast<std::size_t>(n)) {
            violate("h and m must partition the basis");
        }
    }

    std::shared_ptr<MinkowskiNorm> norm;
    const int p = static_cast<int>(def.m.size());
    try {
        const auto fam = parse_norm_family(def.norm.family);
        if (!fam) throw InvalidInput("unknown norm family '" + def.norm.family + "'");
        if (*fam != NormFamily::quartic && def.norm.matrix.rows() != p) {
            violate("norm matrix is " + std::to_string(def.norm.matrix.rows()) + "x" +
                    std::to_string(def.norm.matrix.cols()) + " but |m| = " + std::to_string(p));
        } else if (*fam == NormFamily::riemannian) {
            norm = std::make_shared<MinkowskiNorm>(MinkowskiNorm::riemannian(def.norm.matrix));
        } else if (*fam == NormFamily::randers) {
            norm = std::make_shared<MinkowskiNorm>(MinkowskiNorm::randers(def.norm.matrix, def.norm.covector));
        } else {
            norm = std::make_shared<MinkowskiNorm>(MinkowskiNorm::quartic(p, def.norm.coefficients));
        }
    } catch (const InvalidInput& e) {
        violate(std::string("norm: ") + e.what());
    }

    if (!violations.empty()) throw ValidationError(std::move(violations));

    auto alg = std::make_shared<const LieAlgebra>(def.basis, std::move(constants));
    const JacobiReport jac = validate_jacobi(*alg, tol);
    if (!jac.pass) {
        const auto& t = jac.worst_triple;
        violate("Jacobi identity fails on (" + def.basis[static_cast<std::size_t>(t[0])] + ", " +
                def.basis[static_cast<std::size_t>(t[1])] + ", " + def.basis[static_cast<std::size_t>(t[2])] +
                "): residual " + std::to_string(jac.max_residual));
    }
    const ClosureReport closure = ReductiveDecomposition::check_closure(*alg, h_idx, m_idx, tol);
    if (!closure.pass) {
        violate("decomposition closure fails at " + closure.worst_pair + ": " +
                (closure.hm_residual >= closure.hh_residual ? "[h,m] leaves m" : "[h,h] leaves h") +
                " (residual " + std::to_string(std::max(closure.hh_residual, closure.hm_residual)) + ")");
    }
    const AdmissibilityReport adm = check_admissible(*norm);
    if (!adm.pass) violate(std::string("norm is not admissible: ") + adm.detail);
    if (!violations.empty()) throw ValidationError(std::move(violations));

    Space space;
    space.name = def.name;
    space.algebra = alg;
    space.decomposition = std::make_shared<const ReductiveDecomposition>(alg, h_idx, m_idx, tol);
    space.norm = std::move(norm);
    return space;
}

Space load_space(const std::string& path, double tol) { return assemble(read_space_file(path), tol); }

SpaceDefinition describe(const Space& space) {
    const LieAlgebra& alg = *space.algebra;
    const auto& names = alg.basis_names();
    SpaceDefinition def;
    def.name = space.name;
    def.dim = alg.dim();
    def.basis = names;
    for (const auto& [key, c] : alg.upper_constants()) {
        BracketRecord rec;
        rec.x = names[static_cast<std::size_t>(key.first)];
        rec.y = names[static_cast<std::size_t>(key.second)];
        for (int k = 0; k < alg.dim(); ++k) {
            if (c(k) != 0.0) rec.out[names[static_cast<std::size_t>(k)]] = c(k);
        }
        def.brackets.push_back(std::move(rec));
    }
    for (int k : space.decomposition->h_indices()) def.h.push_back(names[static_cast<std::size_t>(k)]);
    for (int k : space.decomposition->m_indices()) def.m.push_back(names[static_cast<std::size_t>(k)]);
    const MinkowskiNorm& norm = *space.norm;
    def.norm.family = to_string(norm.family());
    if (norm.family() != NormFamily::quartic) def.norm.matrix = norm.matrix();
    if (norm.family() == NormFamily::randers) def.norm.covector = norm.covector();
    if (norm.family() == NormFamily::quartic) def.norm.coefficients = norm.quartic_coefficients();
    return def;
}

bool bitwise_equal(const Space& a, const Space& b) {
    const LieAlgebra& x = *a.algebra;
    const LieAlgebra& y = *b.algebra;
    if (x.basis_names() != y.basis_names()) return false;
    for (int i = 0; i < x.dim(); ++i) {
        for (int j = 0; j < x.dim(); ++j) {
            if (x.bracket_basis(i, j) != y.bracket_basis(i, j)) return false;
        }
    }
    if (a.decomposition->h_indices() != b.decomposition->h_indices()) return false;
    if (a.decomposition->m_indices() != b.decomposition->m_indices()) return false;
    const MinkowskiNorm& m = *a.norm;
    const MinkowskiNorm& n = *b.norm;
    if (m.family() != n.family() || m.dim() != n.dim()) return false;
    if (m.family() == NormFamily::quartic) return m.quartic_coefficients() == n.quartic_coefficients();
    if (m.matrix() != n.matrix()) return false;
    return m.family() != NormFamily::randers || m.covector() == n.covector();
}

} // namespace hfinsler
