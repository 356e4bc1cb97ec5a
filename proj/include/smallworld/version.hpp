#pragma once

#define SMALLWORLD_VERSION "0.1.0"
