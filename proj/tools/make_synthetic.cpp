#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fairtune/csv.hpp"
#include "fairtune/dataset.hpp"

int main(int argc, char** argv) {
    CLI::App app{"emit the bundled synthetic biased dataset as CSV"};
    fairtune::SyntheticSpec spec;
    std::string out_path;
    app.add_option("--rows", spec.rows, "number of rows");
    app.add_option("--label-shift", spec.label_shift,
                   "group log-odds shift (+ for privileged, - for unprivileged)");
    app.add_option("--qual-shift", spec.qual_shift,
                   "group shift of the qualification mean");
    app.add_option("--noise-sd", spec.noise_sd, "feature noise standard deviation");
    app.add_option("--seed", spec.seed, "generator seed");
    app.add_option("--out", out_path, "output file (default: stdout)");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::string csv = fairtune::synthetic_csv(spec);
        if (out_path.empty())
            std::cout << csv;
        else
            fairtune::write_file_atomic(out_path, csv);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
