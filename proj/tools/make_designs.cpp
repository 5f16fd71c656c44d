// Regenerates the antipodal t-design files and the 120-point rotation base
// shipped under data/designs.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spherefit/designs.hpp"
#include "spherefit/point_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate spherical t-design point files"};
    std::vector<int> strengths;
    std::string out_dir = (spherefit::default_data_dir() / "designs").string();
    bool rotation_base = false;
    bool verbose = false;
    int restarts = 40;
    int extra_pairs = 4;
    app.add_option("-t,--strength", strengths, "design strengths to generate");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_flag("--rotation-base", rotation_base, "also generate the 120-point rotation base 15-design");
    app.add_option("--restarts", restarts, "random restarts per design");
    app.add_option("--extra-pairs", extra_pairs, "how many larger sizes to try when the minimal size fails");
    app.add_flag("-v,--verbose", verbose);
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(out_dir);
    spherefit::DesignSearchOptions options;
    options.restarts = restarts;
    options.verbose = verbose;
    options.extra_pairs = extra_pairs;
    int failures = 0;
    for (int t : strengths) {
        auto found = spherefit::find_symmetric_design(t, options);
        if (!found) {
            std::fprintf(stderr, "t=%d: no design found\n", t);
            ++failures;
            continue;
        }
        const auto path = spherefit::design_file(std::filesystem::path(out_dir).parent_path(), t);
        spherefit::write_points(path, spherefit::PointSet(found->coords),
                                {"antipodal spherical " + std::to_string(t) + "-design, N=" +
                                     std::to_string(found->coords.cols()),
                                 "equal-weight moment residual " + spherefit::format_real(found->residual)});
        std::printf("t=%d N=%ld residual=%.3e restarts=%d -> %s\n", t, static_cast<long>(found->coords.cols()),
                    found->residual, found->restarts_used, path.string().c_str());
    }
    if (rotation_base) {
        auto found = spherefit::find_rotation_base_design(options);
        if (!found) {
            std::fprintf(stderr, "rotation base 15-design not found\n");
            ++failures;
        } else {
            const auto path = spherefit::rotation_base_file(std::filesystem::path(out_dir).parent_path());
            spherefit::write_points(path, spherefit::PointSet(found->coords),
                                    {"spherical 15-design, N=120, five orbits of the octahedral rotation group",
                                     "equal-weight moment residual " + spherefit::format_real(found->residual)});
            std::printf("rot120 residual=%.3e restarts=%d -> %s\n", found->residual, found->restarts_used,
                        path.string().c_str());
        }
    }
    return failures == 0 ? 0 : 2;
}
