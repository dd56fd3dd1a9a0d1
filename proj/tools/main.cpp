#include "cli.hpp"

int main(int argc, char** argv) { return msc::cli::run(argc, argv); }
