#include <cstdio>
#include <exception>

#include "config.hpp"

#include "qcmap/errors.hpp"

int main(int argc, char** argv) {
    try {
        const qcmap::cli::RunConfig cfg = qcmap::cli::parse_config(argc, argv);
        return qcmap::cli::run(cfg);
    } catch (const qcmap::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qcmap::AllDiverged& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
