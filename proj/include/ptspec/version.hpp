#pragma once

#define PTSPEC_VERSION "0.1.0"
