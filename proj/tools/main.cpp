#include "credit_engine/report.hpp"

int main(int argc, char** argv) { return credit_engine::report::run(argc, argv); }
