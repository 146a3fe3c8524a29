import os
import argparse

from reservelab.search import INDEX_FILE, summarize_index


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument('--res-dir', type=str, default='output/search',
                        help='directory holding one sub-directory per search run')
    args = parser.parse_args()

    index_paths = []
    for root, _, files in os.walk(args.res_dir):
        if INDEX_FILE in files:
            index_paths.append(os.path.join(root, INDEX_FILE))
    if not index_paths:
        print('[no result]: no {} under {}'.format(INDEX_FILE, args.res_dir))
        return

    table = summarize_index(sorted(index_paths))
    out = os.path.join(args.res_dir, 'results.txt')
    with open(out, 'w') as wf:
        wf.write('{}\n'.format(table))
    print(table)
    print('Reformat all results -> {}'.format(out))


if __name__ == '__main__':
    main()
