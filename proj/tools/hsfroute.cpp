#include "hsfroute/errors.hpp"
#include "hsfroute/experiment.hpp"

#include <iostream>

int main(int argc, char **argv) {
  using namespace hsfroute;
  ExperimentSpec spec;
  try {
    bool help = false;
    try {
      spec = parse_args(argc, argv, &help);
    } catch (const UsageError &e) {
      if (help) {
        std::cout << e.what();
        return kExitOk;
      }
      std::cerr << "hsfroute: " << e.what() << "\n";
      return kExitUsage;
    }
    return run_experiment(spec, std::cout);
  } catch (const IoError &e) {
    std::cerr << "hsfroute: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError &e) {
    std::cerr << "hsfroute: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError &e) {
    std::cerr << "hsfroute: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    std::cerr << "hsfroute: " << e.what() << "\n";
    return kExitViolation;
  }
}
