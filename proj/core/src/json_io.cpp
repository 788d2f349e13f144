#include <ostream>

#include <json.hpp>

#include "hawkes/io.hpp"

namespace hawkes {

namespace {

using nlohmann::json;

json to_array(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

json to_rows(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_array(m.row(i).transpose()));
    return rows;
}

json basis_json(const KernelBasis& basis) {
    return {{"family", std::string(to_string(basis.family()))},
            {"beta", basis.beta()},
            {"P", basis.order()}};
}

}  // namespace

std::string estimate_to_json(const HawkesEstimate& estimate, int indent) {
    json doc;
    doc["basis"] = basis_json(estimate.basis);
    doc["alpha_hat"] = to_array(estimate.alpha_hat);
    doc["c_hat"] = estimate.c_hat;
    doc["gamma_hat"] = estimate.gamma_hat;
    doc["lambda_hat"] = estimate.lambda_hat;
    doc["n_events"] = estimate.diagnostics.n_events;
    doc["horizon"] = estimate.diagnostics.horizon;
    doc["cond_R"] = estimate.diagnostics.condition_number;
    doc["residual"] = estimate.diagnostics.residual;
    doc["warnings"] = estimate.diagnostics.warnings;
    return doc.dump(indent);
}

std::string asymptotic_result_to_json(const AsymptoticResult& result, const KernelBasis& basis,
                                      const ClosedLoopReport* closed_loop, int indent) {
    json doc;
    doc["basis"] = basis_json(basis);
    doc["Lambda"] = result.Lambda;
    doc["R_star"] = to_rows(result.R_star);
    doc["R_star_cross"] = to_array(result.R_star_cross);
    doc["alpha_star"] = to_array(result.alpha_star);
    doc["c_star"] = result.c_star;
    doc["gamma_star"] = result.gamma_star;
    doc["eig_min"] = result.eig_min;
    doc["eig_max"] = result.eig_max;
    doc["cond"] = result.cond;
    if (closed_loop != nullptr) {
        json eigs = json::array();
        for (Eigen::Index i = 0; i < closed_loop->eigenvalues.size(); ++i) {
            eigs.push_back({closed_loop->eigenvalues(i).real(), closed_loop->eigenvalues(i).imag()});
        }
        doc["closed_loop"] = {{"eigenvalues", eigs},
                              {"is_hurwitz", closed_loop->is_hurwitz},
                              {"lyapunov_residual", closed_loop->lyapunov_residual}};
    }
    return doc.dump(indent);
}

void write_study_csv(std::ostream& out, const std::vector<ConditioningRow>& rows) {
    out << "P,cond_laguerre,cond_erlang,bound_laguerre,bound_erlang,sigma_min_sq_L,sigma_max_sq_L\n";
    for (const auto& row : rows) {
        out << row.P << ',' << format_double(row.cond_laguerre) << ','
            << (row.cond_erlang ? format_double(*row.cond_erlang) : "indefinite-in-double") << ','
            << format_double(row.bound_laguerre) << ',' << format_double(row.bound_erlang) << ','
            << format_double(row.sigma_min_sq_L) << ',' << format_double(row.sigma_max_sq_L)
            << '\n';
    }
}

std::string study_metadata_json(const StudyMetadata& meta, int indent) {
    json doc = {{"Gamma", meta.Gamma},
                {"beta", meta.beta},
                {"Lambda", meta.Lambda},
                {"quadrature_abs_tol", meta.abs_tol},
                {"erlang_max_condition", meta.max_condition}};
    return doc.dump(indent);
}

}  // namespace hawkes
