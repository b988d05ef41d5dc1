// cli.hpp
// Subcommands of the qgain tool, callable without argument parsing so they can be tested
// in-process. Each returns the process exit code.
//
//   0 ok, 1 bound violated, 2 parse error, 3 validation or usage error, 4 not decomposable.

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "channels.hpp"
#include "decomposition.hpp"
#include "error.hpp"
#include "io.hpp"
#include "states.hpp"

namespace qgain::cli {

enum ExitCode : int {
    kOk = 0,
    kBoundViolated = 1,
    kParseError = 2,
    kInvalid = 3,
    kNotDecomposable = 4,
};

inline int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::ParseError: return kParseError;
    case ErrorKind::NotDecomposable:
    case ErrorKind::InconsistentEntries: return kNotDecomposable;
    default: return kInvalid;
    }
}

// Runs `body`, mapping qgain errors to exit codes and reporting them on `err`.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

inline std::string format_complex(const ComplexScalar& z) {
    const double im = z.imag();
    return format_sig12(z.real()) + (std::signbit(im) && im != 0.0 ? " - " : " + ") + format_sig12(std::abs(im)) + "i";
}

inline void print_matrix(std::ostream& out, const ComplexMatrix& m, std::string_view indent = "  ") {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << indent << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ",  " : " ") << format_complex(m(i, j));
        out << " ]\n";
    }
}

inline DensityMatrix load_state(const std::string& path) { return validate_density(read_matrix_file(path)); }

inline int cmd_entropy(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        out << format_sig12(von_neumann_entropy(load_state(path))) << '\n';
        return kOk;
    });
}

inline int cmd_portrait(const std::string& path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto rho = load_state(path);
        const auto sigma = qubit_portrait(rho);
        out << "portrait:\n";
        print_matrix(out, sigma.matrix());
        out << "entropy = " << format_sig12(von_neumann_entropy(sigma)) << '\n';
        return kOk;
    });
}

inline void print_decomposition(std::ostream& out, const TensorDecomposition& dec) {
    out << "alpha:\n";
    print_matrix(out, dec.alpha());
    out << "h1 = [ " << format_complex(dec.h1()[0]) << ",  " << format_complex(dec.h1()[1]) << " ]\n";
    out << "h2 = [ " << format_complex(dec.h2()[0]) << ",  " << format_complex(dec.h2()[1]) << " ]\n";
}

inline int cmd_decompose(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto rho = load_state(path);
        const auto diag = check_form_conditions(rho, tol);
        out << "minor_residual = " << format_sig12(diag.minor_residual) << '\n'
            << "det3_residual = " << format_sig12(diag.det3_residual) << '\n'
            << "support_residual = " << format_sig12(diag.support_residual) << '\n'
            << "decomposable = " << (diag.decomposable ? "yes" : "no") << '\n';
        print_decomposition(out, extract_decomposition(rho, tol));
        return kOk;
    });
}

// A 4x4 file is decomposed directly; a 3x3 file is embedded first.
inline TensorDecomposition decomposition_from_file(const std::string& path, double tol) {
    auto rho = load_state(path);
    if (rho.dim() == 3) rho = embed_qutrit(rho);
    return extract_decomposition(rho, tol);
}

struct SweepOptions {
    std::optional<std::string> input;   // matrix file; otherwise a seeded random state
    std::uint64_t seed = 42;
    std::vector<double> grid = default_gamma_grid();
    std::optional<std::string> csv_path; // CSV goes to `out` when absent
    double tol = kDecompositionTol;
};

inline int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto dec = opt.input ? decomposition_from_file(*opt.input, opt.tol) : random_decomposable(opt.seed);
        const auto rows = gamma_sweep(dec, opt.grid);
        const auto csv = sweep_to_csv(rows);
        if (opt.csv_path) {
            std::ofstream file(*opt.csv_path, std::ios::binary);
            if (!file) throw Error(ErrorKind::IoError, "cannot write " + *opt.csv_path);
            file << csv;
        } else {
            out << csv;
        }
        double min_slack = rows.empty() ? 0.0 : rows.front().slack;
        for (const auto& r : rows) min_slack = std::min(min_slack, r.slack);
        out << "min slack = " << format_sig12(min_slack) << '\n';
        return kOk;
    });
}

struct VerifyOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 42;
    std::vector<double> grid = default_gamma_grid();
    double tol = kBoundTol;
    unsigned threads = 0;
};

inline void print_case(std::ostream& out, const EnsembleCase& c) {
    out << "seed = " << c.seed << ", gamma = " << format_sig12(c.row.gamma) << ", lhs = " << format_sig12(c.row.lhs)
        << ", rhs = " << format_sig12(c.row.rhs) << ", slack = " << format_sig12(c.row.slack) << '\n';
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.samples == 0) {
        err << "error: --samples must be at least 1\n";
        return kInvalid;
    }
    if (opt.grid.empty()) {
        err << "error: gamma grid is empty\n";
        return kInvalid;
    }
    return guarded(err, [&] {
        const auto summary = verify_ensemble(opt.samples, opt.seed, opt.grid, opt.tol, opt.threads);
        out << "checked = " << summary.checked << " (" << opt.samples << " states x " << opt.grid.size()
            << " gamma values, seeds " << opt.seed << ".." << opt.seed + opt.samples - 1 << ")\n";
        out << "min slack = " << format_sig12(summary.min_slack) << '\n';
        out << "worst case: ";
        print_case(out, summary.worst);
        out << "violations = " << summary.violations << " (tol " << opt.tol << ")\n";
        if (summary.first_violation) {
            out << "first violation: ";
            print_case(out, *summary.first_violation);
            err << "error: lower bound violated\n";
            return kBoundViolated;
        }
        return kOk;
    });
}

} // namespace qgain::cli
