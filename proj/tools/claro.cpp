// claro — command-line front end for the CQ template toolkit.
//
//   claro suggest "What type"
//   claro instantiate 81 --bind EC1=pizzas --bind PC1=have --bind EC2=nuts | claro match
//   claro coverage setA --set claro --gold

#include <string>
#include <vector>

#include "claro/cli.hpp"

int main(int argc, char* argv[]) { return claro::run_cli({argv + 1, argv + argc}); }
