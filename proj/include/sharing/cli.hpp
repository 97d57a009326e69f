#pragma once

namespace sharing {

// The command-line surface, callable in-process so tests can drive it
// without spawning the binary. argv follows main() conventions (argv[0] is
// the program name). Subcommands:
//
//   solve   --problem uwsa|ewsa|ersa --instance FILE --k TARGET [--b N]
//           [--algorithm auto|matching|fpt-agents|treewidth|identical-clique
//                        |bounded-shared|brute]
//           [--witness FILE] [--decomposition FILE]
//   verify  --instance FILE --sharing FILE
//   gen     --random  --seed S --n N --m M [--sharing MODEL]
//                     [--attention MODEL] [--u-max U] --out FILE
//           --gadget independent-set|3sat|multicolored-clique|clique|n3dm
//                     --source FILE --out FILE
//   bench   --corpus DIR --report FILE
//
// One result object is printed to standard output:
//   {"answer": "yes"|"no", "value": ..., "algorithm": ..., "elapsed_ms": ...}
// Diagnostics go to standard error. Exit codes: 0 = yes/success, 1 = no,
// 2 = input error, 3 = a search refused to run within its node budget.
// The environment variable SHARE_ALLOC_NODE_CAP (a positive integer)
// overrides the default node budget of the exponential searches.
int cli_main(int argc, const char* const* argv);

}  // namespace sharing
